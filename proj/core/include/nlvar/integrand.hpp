#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nlvar {

/// Density W(x, u, U) of a non-local functional, where U stands for the
/// difference quotient (u(X) - u(x)) / (X - x). Partial derivatives are
/// supplied analytically.
struct Integrand {
  using Density = std::function<double(double x, double u, double U)>;

  std::string name;
  double p = 2.0;  ///< growth exponent
  Density w;
  Density w_u;
  Density w_U;
  /// Lower bound W >= c0 |U|^p - c1 used by the coercivity probe.
  double coercivity_c0 = 1.0;
  double coercivity_c1 = 1.0;
};

struct Partials {
  double w_u;
  double w_U;
};

double evaluate(const Integrand& I, double x, double u, double U);
Partials grad(const Integrand& I, double x, double u, double U);

Integrand power_p(double p);
Integrand half_square();
Integrand quadratic_mass();
Integrand two_well_full();
Integrand two_well_bare();

/// Built-in lookup: "power:p", "half-square", "quad-mass", "two-well",
/// "two-well-bare". Throws ParameterError for anything else.
Integrand integrand_by_name(std::string_view name);

struct Probe {
  double x;
  double u;
  double U;
};

struct DerivativeCheck {
  double max_rel_error_u = 0.0;
  double max_rel_error_U = 0.0;
  bool pass = false;
};

inline constexpr double kDerivativeCheckStep = 1e-6;
inline constexpr double kDerivativeCheckTolerance = 1e-5;

/// Central differences of w in u and U against w_u and w_U. The relative
/// error is |fd - exact| / max(1, |exact|). Throws ParameterError on an
/// empty probe list.
DerivativeCheck check_derivatives(const Integrand& I,
                                  std::span<const Probe> probes);

/// Smallest margin W - (c0 |U|^p - c1) over the probes; negative means the
/// coercivity bound is violated somewhere.
double coercivity_margin(const Integrand& I, std::span<const Probe> probes);

/// Regular lattice: x over [0,1], u and U over [lo,hi], `per_axis` points each.
std::vector<Probe> probe_lattice(double lo, double hi, int per_axis);

}  // namespace nlvar
