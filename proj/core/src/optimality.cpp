#include "nlvar/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nlvar {

double pv_log(double x) {
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError("principal value needs 0 < x < 1, got " + std::to_string(x));
  }
  return std::log((1.0 - x) / x);
}

double kernel_K(double x, double X) {
  if (!(x > 0.0 && x < 1.0) || !(X > 0.0 && X < 1.0)) {
    throw DomainError("kernel arguments must lie in (0,1)");
  }
  if (x == X) throw SingularityError("kernel K is singular at X = x");
  return x * (1.0 - x) / (X - x) + (X < x ? 1.0 : 0.0);
}

int interior_node_index(const Grid1D& grid, double x) {
  const double r = x * grid.cells();
  const auto k = static_cast<int>(std::lround(r));
  if (k <= 0 || k >= grid.cells() ||
      std::abs(r - k) > 1e-9) {
    throw DomainError("x = " + std::to_string(x) + " is not an interior node");
  }
  return k;
}

double pv_log_quadrature(const Grid1D& grid, int k) {
  const double x = grid.node(k);
  return paired_midpoint_sum(grid, k, [x](double X) { return 1.0 / (X - x); });
}

double residual_at_node(const NodalFunction& u, const Integrand& I, int k) {
  const Grid1D& grid = u.grid();
  if (k <= 0 || k >= grid.cells()) {
    throw DomainError("residual needs an interior node index");
  }
  const double x = grid.node(k);
  const double ux = u.value(k);
  const int n = grid.cells();
  const auto integrand = [&](double X) {
    const int j = std::clamp(static_cast<int>(X * n), 0, n - 1);
    const double uX = u.midpoint_value(j);
    const double D = (uX - ux) / (X - x);
    const double flux = I.w_U(x, ux, D) + I.w_U(X, uX, D);
    return -flux / (X - x) + I.w_u(x, ux, D);
  };
  return paired_midpoint_sum(grid, k, integrand);
}

double residual(const NodalFunction& u, const Integrand& I, double x) {
  return residual_at_node(u, I, interior_node_index(u.grid(), x));
}

ResidualReport make_residual_report(const Grid1D& grid,
                                    std::vector<double> residuals,
                                    bool exclude_boundary_adjacent) {
  ResidualReport r;
  const int n = grid.cells();
  for (int k = 1; k < n; ++k) r.x_points.push_back(grid.node(k));
  r.residuals = std::move(residuals);
  double sq = 0.0;
  for (double v : r.residuals) sq += v * v;
  r.norm_l2 = std::sqrt(grid.spacing() * sq);
  // With n < 4 no node is away from both ends.
  r.sup_excludes_boundary_adjacent = exclude_boundary_adjacent && n >= 4;
  const std::size_t skip = r.sup_excludes_boundary_adjacent ? 1 : 0;
  for (std::size_t i = skip; i + skip < r.residuals.size(); ++i) {
    r.norm_sup = std::max(r.norm_sup, std::abs(r.residuals[i]));
  }
  return r;
}

ResidualReport residual_report(const NodalFunction& u, const Integrand& I,
                               bool exclude_boundary_adjacent) {
  std::vector<double> R;
  for (int k = 1; k < u.grid().cells(); ++k) R.push_back(residual_at_node(u, I, k));
  return make_residual_report(u.grid(), std::move(R), exclude_boundary_adjacent);
}

ResidualReport check_inteqo(const NodalFunction& u,
                            bool exclude_boundary_adjacent) {
  const Grid1D& grid = u.grid();
  const int n = grid.cells();
  std::vector<double> Q;
  for (int k = 1; k < n; ++k) {
    const double x = grid.node(k);
    const double ux = u.value(k);
    Q.push_back(paired_midpoint_sum(grid, k, [&](double X) {
      const int j = std::clamp(static_cast<int>(X * n), 0, n - 1);
      const double D = (u.midpoint_value(j) - ux) / (X - x);
      return D / (X - x);
    }));
  }
  return make_residual_report(grid, std::move(Q), exclude_boundary_adjacent);
}

double kernel_action(const NodalFunction& u, double x) {
  const Grid1D& grid = u.grid();
  const int k = interior_node_index(grid, x);
  const double xk = grid.node(k);
  const int n = grid.cells();
  return paired_midpoint_sum(grid, k, [&](double X) {
    const int j = std::clamp(static_cast<int>(X * n), 0, n - 1);
    return kernel_K(xk, X) * u.cell_slope(j);
  });
}

double kernel_mismatch(const NodalFunction& u, double x) {
  return kernel_action(u, x) - x;
}

}  // namespace nlvar
