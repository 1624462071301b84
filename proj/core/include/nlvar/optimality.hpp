#pragma once

#include <cstddef>
#include <vector>

#include "nlvar/errors.hpp"
#include "nlvar/grid.hpp"
#include "nlvar/integrand.hpp"

namespace nlvar {

/// Non-local divergence (F(x,X) + F(X,x)) / (X - x).
template <typename F>
double ndiv(const F& field, double x, double X) {
  if (x == X) throw SingularityError("non-local divergence is singular at X = x");
  return (field(x, X) + field(X, x)) / (X - x);
}

/// Principal value of ∫₀¹ dX / (X - x), i.e. ln((1-x)/x).
double pv_log(double x);

/// K(x,X) = x(1-x)/(X-x) + [X < x].
double kernel_K(double x, double X);

/// Index k of the interior node at coordinate x (0 < k < n). Throws
/// DomainError if x is not an interior node.
int interior_node_index(const Grid1D& grid, double x);

/// h Σ_j g(m_j) over all cell midpoints, where the cells are accumulated
/// as symmetric pairs (m_{k-1-l}, m_{k+l}) around the interior node x_k
/// before the unpaired cells on the longer side. For an integrand odd about
/// x_k the paired part cancels exactly, which realizes the principal value.
template <typename G>
double paired_midpoint_sum(const Grid1D& grid, int k, const G& g) {
  const int n = grid.cells();
  const int window = k < n - k ? k : n - k;
  double paired = 0.0;
  for (int l = 0; l < window; ++l) {
    paired += g(grid.midpoint(k - 1 - l)) + g(grid.midpoint(k + l));
  }
  double tail = 0.0;
  if (k < n - k) {
    for (int j = k + window; j < n; ++j) tail += g(grid.midpoint(j));
  } else {
    for (int j = k - window - 1; j >= 0; --j) tail += g(grid.midpoint(j));
  }
  return grid.spacing() * (paired + tail);
}

/// Paired midpoint approximation of pv ∫ dX/(X - x_k).
double pv_log_quadrature(const Grid1D& grid, int k);

/// R(x) = ∫₀¹ [-Ndiv W_U(x, u(x), Du(x,X)) + W_u(x, u(x), Du(x,X))] dX at
/// an interior node, by paired midpoint quadrature.
double residual(const NodalFunction& u, const Integrand& I, double x);
double residual_at_node(const NodalFunction& u, const Integrand& I, int k);

struct ResidualReport {
  std::vector<double> x_points;
  std::vector<double> residuals;
  double norm_l2 = 0.0;   ///< (h Σ R²)^{1/2} over all interior nodes
  double norm_sup = 0.0;  ///< max |R|, see sup_excludes_boundary_adjacent
  /// Whether nodes x_1 and x_{n-1} were left out of norm_sup.
  bool sup_excludes_boundary_adjacent = true;
};

/// Builds the report from a residual vector at nodes x_1..x_{n-1}.
ResidualReport make_residual_report(const Grid1D& grid,
                                    std::vector<double> residuals,
                                    bool exclude_boundary_adjacent = true);

/// Residual at every interior node. The Bolza integral equation is this
/// residual with the two-well integrand including the mass term.
ResidualReport residual_report(const NodalFunction& u, const Integrand& I,
                               bool exclude_boundary_adjacent = true);

/// ∫₀¹ (u(X) - u(x)) / (X - x)² dX at every interior node. For the
/// half-square density this equals -1/2 times the residual.
ResidualReport check_inteqo(const NodalFunction& u,
                            bool exclude_boundary_adjacent = true);

/// pv ∫₀¹ K(x,X) u'(X) dX at an interior node, with u' the cell slopes.
double kernel_action(const NodalFunction& u, double x);

/// kernel_action(u, x) - x, zero for solutions of the integrated form of
/// the quadratic optimality equation.
double kernel_mismatch(const NodalFunction& u, double x);

}  // namespace nlvar
