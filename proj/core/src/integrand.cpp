#include "nlvar/integrand.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "nlvar/errors.hpp"

namespace nlvar {

double evaluate(const Integrand& I, double x, double u, double U) {
  return I.w(x, u, U);
}

Partials grad(const Integrand& I, double x, double u, double U) {
  return {I.w_u(x, u, U), I.w_U(x, u, U)};
}

Integrand power_p(double p) {
  if (!(p > 1.0)) {
    throw ParameterError("power integrand needs p > 1");
  }
  Integrand I;
  I.name = "power:" + std::to_string(p);
  I.p = p;
  I.w = [p](double, double, double U) { return std::pow(std::abs(U), p); };
  I.w_u = [](double, double, double) { return 0.0; };
  I.w_U = [p](double, double, double U) {
    if (U == 0.0) return 0.0;
    return std::copysign(p * std::pow(std::abs(U), p - 1.0), U);
  };
  I.coercivity_c0 = 1.0;
  I.coercivity_c1 = 1.0;
  return I;
}

Integrand half_square() {
  Integrand I;
  I.name = "half-square";
  I.p = 2.0;
  I.w = [](double, double, double U) { return 0.5 * U * U; };
  I.w_u = [](double, double, double) { return 0.0; };
  I.w_U = [](double, double, double U) { return U; };
  I.coercivity_c0 = 0.5;
  I.coercivity_c1 = 0.5;
  return I;
}

Integrand quadratic_mass() {
  Integrand I;
  I.name = "quad-mass";
  I.p = 2.0;
  I.w = [](double, double u, double U) { return 0.5 * U * U + 8.0 * u * u; };
  I.w_u = [](double, double u, double) { return 16.0 * u; };
  I.w_U = [](double, double, double U) { return U; };
  I.coercivity_c0 = 0.5;
  I.coercivity_c1 = 0.5;
  return I;
}

namespace {

double two_well(double U) {
  const double s = U * U - 1.0;
  return 0.25 * s * s;
}

double two_well_slope(double U) { return U * (U * U - 1.0); }

}  // namespace

// ¼(U²-1)² vanishes at U = ±1 while c0(|U|^4 - 1) grows linearly there, so the
// bound is only available with separate constants: ¼(U²-1)² >= U⁴/8 - ¼.
Integrand two_well_full() {
  Integrand I;
  I.name = "two-well";
  I.p = 4.0;
  I.w = [](double, double u, double U) { return two_well(U) + 0.5 * u * u; };
  I.w_u = [](double, double u, double) { return u; };
  I.w_U = [](double, double, double U) { return two_well_slope(U); };
  I.coercivity_c0 = 0.125;
  I.coercivity_c1 = 0.25;
  return I;
}

Integrand two_well_bare() {
  Integrand I;
  I.name = "two-well-bare";
  I.p = 4.0;
  I.w = [](double, double, double U) { return two_well(U); };
  I.w_u = [](double, double, double) { return 0.0; };
  I.w_U = [](double, double, double U) { return two_well_slope(U); };
  I.coercivity_c0 = 0.125;
  I.coercivity_c1 = 0.25;
  return I;
}

Integrand integrand_by_name(std::string_view name) {
  if (name == "half-square") return half_square();
  if (name == "quad-mass") return quadratic_mass();
  if (name == "two-well") return two_well_full();
  if (name == "two-well-bare") return two_well_bare();
  constexpr std::string_view prefix = "power:";
  if (name.starts_with(prefix)) {
    const std::string_view digits = name.substr(prefix.size());
    double p = 0.0;
    const auto [end, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc{} || end != digits.data() + digits.size() || digits.empty()) {
      throw ParameterError("bad exponent in integrand name '" +
                           std::string(name) + "'");
    }
    Integrand I = power_p(p);
    I.name = std::string(name);
    return I;
  }
  throw ParameterError("unknown integrand '" + std::string(name) + "'");
}

DerivativeCheck check_derivatives(const Integrand& I,
                                  std::span<const Probe> probes) {
  if (probes.empty()) throw ParameterError("derivative check needs probes");
  constexpr double step = kDerivativeCheckStep;
  DerivativeCheck report;
  for (const Probe& q : probes) {
    const double fd_u =
        (I.w(q.x, q.u + step, q.U) - I.w(q.x, q.u - step, q.U)) / (2 * step);
    const double fd_U =
        (I.w(q.x, q.u, q.U + step) - I.w(q.x, q.u, q.U - step)) / (2 * step);
    const Partials exact = grad(I, q.x, q.u, q.U);
    report.max_rel_error_u =
        std::max(report.max_rel_error_u,
                 std::abs(fd_u - exact.w_u) / std::max(1.0, std::abs(exact.w_u)));
    report.max_rel_error_U =
        std::max(report.max_rel_error_U,
                 std::abs(fd_U - exact.w_U) / std::max(1.0, std::abs(exact.w_U)));
  }
  report.pass = report.max_rel_error_u <= kDerivativeCheckTolerance &&
                report.max_rel_error_U <= kDerivativeCheckTolerance;
  return report;
}

double coercivity_margin(const Integrand& I, std::span<const Probe> probes) {
  double margin = INFINITY;
  for (const Probe& q : probes) {
    const double bound =
        I.coercivity_c0 * std::pow(std::abs(q.U), I.p) - I.coercivity_c1;
    margin = std::min(margin, I.w(q.x, q.u, q.U) - bound);
  }
  return margin;
}

std::vector<Probe> probe_lattice(double lo, double hi, int per_axis) {
  std::vector<Probe> probes;
  if (per_axis < 2) return probes;
  const double step = (hi - lo) / (per_axis - 1);
  for (int a = 0; a < per_axis; ++a) {
    for (int b = 0; b < per_axis; ++b) {
      for (int c = 0; c < per_axis; ++c) {
        probes.push_back({static_cast<double>(a) / (per_axis - 1), lo + b * step,
                          lo + c * step});
      }
    }
  }
  return probes;
}

}  // namespace nlvar
