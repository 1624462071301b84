#include "nlvar/energy.hpp"

#include <cmath>
#include <sstream>

#include "compensated_sum.hpp"
#include "nlvar/errors.hpp"

namespace nlvar {

namespace {

struct MidpointData {
  std::vector<double> x;      // midpoints m_i
  std::vector<double> u;      // u(m_i)
  std::vector<double> slope;  // cell slopes
  std::span<const double> v;  // nodal values

  // Du(m_i, m_j) for i != j. The numerator is formed from nodal differences
  // rather than rounded midpoint values: for nearby cells the difference of
  // the two midpoint values would lose most of its digits.
  double quotient(std::size_t i, std::size_t j) const {
    const double rise = 0.5 * ((v[j] - v[i]) + (v[j + 1] - v[i + 1]));
    return rise / (x[j] - x[i]);
  }
};

MidpointData midpoint_data(const Grid1D& grid, std::span<const double> v) {
  const int n = grid.cells();
  MidpointData d;
  d.v = v;
  d.x.resize(static_cast<std::size_t>(n));
  d.u.resize(static_cast<std::size_t>(n));
  d.slope.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    d.x[k] = grid.midpoint(i);
    d.u[k] = 0.5 * (v[k] + v[k + 1]);
    d.slope[k] = (v[k + 1] - v[k]) * n;
  }
  return d;
}

[[noreturn]] void throw_non_finite(const Integrand& I, double x, double X,
                                   double value) {
  std::ostringstream msg;
  msg << "non-finite energy density " << value << " for " << I.name
      << " at (x, X) = (" << x << ", " << X << ")";
  throw NonFiniteEnergyError(msg.str(), x, X);
}

// Returns Σ_j W for row i.
double row_sum(const MidpointData& d, const Integrand& I, std::size_t i) {
  detail::CompensatedSum row;
  const std::size_t n = d.x.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double U = (i == j) ? d.slope[i] : d.quotient(i, j);
    const double w = I.w(d.x[i], d.u[i], U);
    if (!std::isfinite(w)) throw_non_finite(I, d.x[i], d.x[j], w);
    row.add(w);
  }
  return row.value();
}

void check_values(const Grid1D& grid, std::span<const double> values) {
  if (values.size() != static_cast<std::size_t>(grid.node_count())) {
    throw ParameterError("nodal vector does not match the grid");
  }
}

}  // namespace

EnergyReport energy(const NodalFunction& u, const Integrand& I,
                    bool with_breakdown) {
  const Grid1D& grid = u.grid();
  const MidpointData d = midpoint_data(grid, u.values());
  const double h2 = grid.spacing() * grid.spacing();
  EnergyReport report;
  report.n = grid.cells();
  report.integrand = I.name;
  detail::CompensatedSum total;
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    const double r = row_sum(d, I, i);
    total.add(r);
    if (with_breakdown) report.row_sums.push_back(h2 * r);
  }
  report.value = h2 * total.value();
  return report;
}

double energy_value(const Grid1D& grid, std::span<const double> values,
                    const Integrand& I) {
  check_values(grid, values);
  const MidpointData d = midpoint_data(grid, values);
  detail::CompensatedSum total;
  for (std::size_t i = 0; i < d.x.size(); ++i) total.add(row_sum(d, I, i));
  return grid.spacing() * grid.spacing() * total.value();
}

double energy_value_and_gradient(const Grid1D& grid,
                                 std::span<const double> values,
                                 const Integrand& I,
                                 std::span<double> interior_grad) {
  check_values(grid, values);
  const int n = grid.cells();
  if (interior_grad.size() != static_cast<std::size_t>(n - 1)) {
    throw ParameterError("gradient buffer must hold n-1 components");
  }
  const MidpointData d = midpoint_data(grid, values);
  const auto cells = static_cast<std::size_t>(n);
  // dE/du(m_i) and dE/dslope_i, without the common h² factor.
  std::vector<double> d_mid(cells, 0.0);
  std::vector<double> d_slope(cells, 0.0);
  detail::CompensatedSum total;
  for (std::size_t i = 0; i < cells; ++i) {
    detail::CompensatedSum row;
    for (std::size_t j = 0; j < cells; ++j) {
      if (i == j) {
        const double U = d.slope[i];
        const double w = I.w(d.x[i], d.u[i], U);
        if (!std::isfinite(w)) throw_non_finite(I, d.x[i], d.x[j], w);
        row.add(w);
        d_mid[i] += I.w_u(d.x[i], d.u[i], U);
        d_slope[i] += I.w_U(d.x[i], d.u[i], U);
        continue;
      }
      const double gap = d.x[j] - d.x[i];
      const double U = d.quotient(i, j);
      const double w = I.w(d.x[i], d.u[i], U);
      if (!std::isfinite(w)) throw_non_finite(I, d.x[i], d.x[j], w);
      row.add(w);
      const double dU = I.w_U(d.x[i], d.u[i], U) / gap;
      d_mid[i] += I.w_u(d.x[i], d.u[i], U) - dU;
      d_mid[j] += dU;
    }
    total.add(row.value());
  }
  const double h2 = grid.spacing() * grid.spacing();
  for (int k = 1; k < n; ++k) {
    const auto left = static_cast<std::size_t>(k - 1);
    const auto right = static_cast<std::size_t>(k);
    // u(m_i) = (v_i + v_{i+1})/2 and slope_i = n (v_{i+1} - v_i).
    const double g = 0.5 * (d_mid[left] + d_mid[right]) +
                     n * (d_slope[left] - d_slope[right]);
    interior_grad[static_cast<std::size_t>(k - 1)] = h2 * g;
  }
  return h2 * total.value();
}

std::vector<double> energy_gradient(const NodalFunction& u, const Integrand& I) {
  std::vector<double> g(static_cast<std::size_t>(u.grid().cells() - 1));
  energy_value_and_gradient(u.grid(), u.values(), I, g);
  return g;
}

RefinementComparison refine_and_compare(
    const std::function<double(double)>& profile, const Integrand& I, int n,
    int factor) {
  if (factor < 2) throw ParameterError("refinement factor must be >= 2");
  RefinementComparison r;
  r.n_coarse = n;
  r.n_fine = n * factor;
  r.coarse = energy(sample(Grid1D(r.n_coarse), profile), I).value;
  r.fine = energy(sample(Grid1D(r.n_fine), profile), I).value;
  r.gap = std::abs(r.fine - r.coarse);
  return r;
}

}  // namespace nlvar
