#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nlvar/grid.hpp"
#include "nlvar/integrand.hpp"

namespace nlvar {

/// Tensor midpoint approximation of E(u) = ∫∫ W(x, u(x), Du(x,X)) dX dx.
struct EnergyReport {
  double value = 0.0;
  int n = 0;
  std::string integrand;
  /// h² Σ_j W(m_i, ·, ·) per row i; empty unless requested.
  std::vector<double> row_sums;
};

/// Sums W over all midpoint pairs (m_i, m_j), the diagonal i = j using the
/// slope of cell i. Throws NonFiniteEnergyError if W is not finite anywhere.
EnergyReport energy(const NodalFunction& u, const Integrand& I,
                    bool with_breakdown = false);

/// Exact partial derivatives of the discrete energy with respect to the
/// interior nodal values v_1..v_{n-1}.
std::vector<double> energy_gradient(const NodalFunction& u, const Integrand& I);

/// Value-level entry points used by the minimizer. `values` holds all n+1
/// nodal values; `interior_grad` receives n-1 components.
double energy_value(const Grid1D& grid, std::span<const double> values,
                    const Integrand& I);
double energy_value_and_gradient(const Grid1D& grid,
                                 std::span<const double> values,
                                 const Integrand& I,
                                 std::span<double> interior_grad);

struct RefinementComparison {
  int n_coarse = 0;
  int n_fine = 0;
  double coarse = 0.0;
  double fine = 0.0;
  double gap = 0.0;
};

/// Energy of the same continuum profile sampled on n and factor*n cells.
/// Throws ParameterError for factor < 2.
RefinementComparison refine_and_compare(
    const std::function<double(double)>& profile, const Integrand& I, int n,
    int factor);

}  // namespace nlvar
