#include "nlvar/reference.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <string>

#include "nlvar/errors.hpp"

namespace nlvar {

namespace {

constexpr double kQuadratureTolerance = 1e-13;

// x^{2x} with the continuous extension 0^0 = 1.
double self_power(double x) { return x == 0.0 ? 1.0 : std::exp(2.0 * x * std::log(x)); }

double integrate_density(double a, double b) {
  if (a == b) return 0.0;
  static boost::math::quadrature::tanh_sinh<double> rule;
  return rule.integrate([](double t) { return ode_approx_density(t); }, a, b,
                        kQuadratureTolerance);
}

}  // namespace

double local_exp_solution(double x) {
  const double e4 = std::exp(4.0);
  return e4 / (e4 * e4 - 1.0) * (std::exp(4.0 * x) - std::exp(-4.0 * x));
}

double ode_approx_density(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("ode approximation defined on [0,1] only");
  }
  return self_power(x) * self_power(1.0 - x);
}

double ode_approx_derivative(double x, double k) {
  if (!(k > 0.0)) throw ParameterError("k must be positive");
  return k * ode_approx_density(x);
}

double normalize_k() {
  // Log-type derivative singularities at both ends; split at the symmetry
  // point so each piece has one rough end.
  static const double k = 1.0 / (integrate_density(0.0, 0.5) + integrate_density(0.5, 1.0));
  return k;
}

double ode_approx_value(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("ode approximation defined on [0,1] only");
  }
  if (x <= 0.5) return normalize_k() * integrate_density(0.0, x);
  return 1.0 - normalize_k() * integrate_density(x, 1.0);
}

ReferenceProfile ode_approx_profile(const Grid1D& grid) {
  const double k = normalize_k();
  ReferenceProfile p;
  p.name = "ode-approx";
  p.u = ode_approx_value;
  p.u_prime = [k](double x) { return ode_approx_derivative(x, k); };
  p.params["k"] = k;
  // Cumulative sums of per-cell integrals from the left end.
  std::vector<double> v(static_cast<std::size_t>(grid.node_count()), 0.0);
  double acc = 0.0;
  for (int i = 1; i <= grid.cells(); ++i) {
    acc += integrate_density(grid.node(i - 1), grid.node(i));
    v[static_cast<std::size_t>(i)] = k * acc;
  }
  p.nodal = NodalFunction(grid, std::move(v));
  return p;
}

ReferenceProfile local_exp_profile(const Grid1D& grid) {
  ReferenceProfile p;
  p.name = "local-exp";
  p.u = local_exp_solution;
  p.u_prime = [](double x) {
    const double e4 = std::exp(4.0);
    return 4.0 * e4 / (e4 * e4 - 1.0) * (std::exp(4.0 * x) + std::exp(-4.0 * x));
  };
  p.nodal = sample(grid, local_exp_solution, false);
  return p;
}

double holder_exponent(double p) {
  if (!(p > 2.0)) {
    throw DomainError("Hölder continuity needs p > 2, got " + std::to_string(p));
  }
  return (p - 2.0) / p;
}

}  // namespace nlvar
