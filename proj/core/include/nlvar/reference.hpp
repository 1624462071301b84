#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "nlvar/grid.hpp"

namespace nlvar {

/// Closed-form or quadrature-defined profile used as an oracle or overlay.
struct ReferenceProfile {
  std::string name;
  std::function<double(double)> u;
  std::optional<std::function<double(double)>> u_prime;
  std::map<std::string, double> params;
  /// Nodal samples of u on the grid the profile was built for.
  std::optional<NodalFunction> nodal;
};

/// e⁴/(e⁸-1) (e^{4x} - e^{-4x}): minimizer of ∫ ½u'² + 8u² with u(0)=0, u(1)=1.
double local_exp_solution(double x);

/// x^{2x} (1-x)^{2(1-x)}, extended by 1 at x = 0 and x = 1.
double ode_approx_density(double x);

/// k · ode_approx_density(x). Throws ParameterError for k <= 0 and
/// DomainError outside [0,1].
double ode_approx_derivative(double x, double k);

/// k with 1/k = ∫₀¹ x^{2x}(1-x)^{2(1-x)} dx, integrated to 1e-8 or better.
double normalize_k();

/// k ∫₀^x ode_approx_density with the normalized k, so that u(0) = 0 and
/// u(1) = 1.
double ode_approx_value(double x);

ReferenceProfile ode_approx_profile(const Grid1D& grid);
ReferenceProfile local_exp_profile(const Grid1D& grid);

/// Hölder exponent (p-2)/p of finite-energy functions. Throws DomainError
/// for p <= 2.
double holder_exponent(double p);

}  // namespace nlvar
