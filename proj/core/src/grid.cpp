#include "nlvar/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlvar/errors.hpp"

namespace nlvar {

Grid1D::Grid1D(int n) : n_(n), h_(0.0) {
  if (n < 2) {
    throw InvalidGridError("grid needs at least 2 cells, got " +
                           std::to_string(n));
  }
  h_ = 1.0 / n;
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> x(static_cast<std::size_t>(n_ + 1));
  for (int i = 0; i <= n_; ++i) x[static_cast<std::size_t>(i)] = node(i);
  return x;
}

std::vector<double> Grid1D::midpoints() const {
  std::vector<double> m(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) m[static_cast<std::size_t>(i)] = midpoint(i);
  return m;
}

int Grid1D::cell_of(double t) const noexcept {
  const auto c = static_cast<int>(std::floor(t * n_));
  return std::clamp(c, 0, n_ - 1);
}

Grid1D make_uniform_grid(int n) { return Grid1D(n); }

NodalFunction::NodalFunction(Grid1D grid, std::vector<double> values,
                             std::optional<double> left_bc,
                             std::optional<double> right_bc)
    : grid_(grid),
      values_(std::move(values)),
      left_bc_(left_bc),
      right_bc_(right_bc) {
  if (values_.size() != static_cast<std::size_t>(grid_.node_count())) {
    throw ParameterError("expected " + std::to_string(grid_.node_count()) +
                         " nodal values, got " +
                         std::to_string(values_.size()));
  }
  if (left_bc_ && values_.front() != *left_bc_) {
    throw ParameterError("left end value disagrees with left end condition");
  }
  if (right_bc_ && values_.back() != *right_bc_) {
    throw ParameterError("right end value disagrees with right end condition");
  }
}

NodalFunction NodalFunction::pinned(Grid1D grid, std::vector<double> values,
                                    BoundaryConditions bc) {
  if (!values.empty()) {
    values.front() = bc.left;
    values.back() = bc.right;
  }
  return NodalFunction(grid, std::move(values), bc.left, bc.right);
}

double NodalFunction::cell_slope(int i) const noexcept {
  const auto k = static_cast<std::size_t>(i);
  return (values_[k + 1] - values_[k]) * grid_.cells();
}

double NodalFunction::midpoint_value(int i) const noexcept {
  const auto k = static_cast<std::size_t>(i);
  return 0.5 * (values_[k] + values_[k + 1]);
}

NodalFunction NodalFunction::with_interior(
    std::span<const double> interior) const {
  if (interior.size() + 2 != values_.size()) {
    throw ParameterError("interior vector has wrong length");
  }
  std::vector<double> v(values_);
  std::copy(interior.begin(), interior.end(), v.begin() + 1);
  return NodalFunction(grid_, std::move(v), left_bc_, right_bc_);
}

double eval(const NodalFunction& u, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError("evaluation point " + std::to_string(t) +
                      " outside [0,1]");
  }
  const Grid1D& g = u.grid();
  const auto v = u.values();
  const int nearest = static_cast<int>(std::lround(t * g.cells()));
  if (g.node(nearest) == t) return v[static_cast<std::size_t>(nearest)];
  const int c = g.cell_of(t);
  const double theta = t * g.cells() - c;
  const auto k = static_cast<std::size_t>(c);
  return (1.0 - theta) * v[k] + theta * v[k + 1];
}

double difference_quotient(const NodalFunction& u, double s, double t) {
  const double gap = t - s;
  if (std::abs(gap) <= u.grid().spacing() * kDiagonalTolerance) {
    if (!(s >= 0.0 && s <= 1.0) || !(t >= 0.0 && t <= 1.0)) {
      throw DomainError("difference quotient arguments outside [0,1]");
    }
    return u.cell_slope(u.grid().cell_of(0.5 * (s + t)));
  }
  return (eval(u, t) - eval(u, s)) / gap;
}

NodalFunction linear_interpolant(const Grid1D& grid, BoundaryConditions bc) {
  std::vector<double> v(static_cast<std::size_t>(grid.node_count()));
  for (int i = 0; i <= grid.cells(); ++i) {
    const double x = grid.node(i);
    v[static_cast<std::size_t>(i)] = bc.left + (bc.right - bc.left) * x;
  }
  return NodalFunction::pinned(grid, std::move(v), bc);
}

NodalFunction constant_function(const Grid1D& grid, double c) {
  return NodalFunction(
      grid, std::vector<double>(static_cast<std::size_t>(grid.node_count()), c));
}

NodalFunction sample(const Grid1D& grid, const std::function<double(double)>& f,
                     bool pin_ends) {
  std::vector<double> v(static_cast<std::size_t>(grid.node_count()));
  for (int i = 0; i <= grid.cells(); ++i) {
    v[static_cast<std::size_t>(i)] = f(grid.node(i));
  }
  if (!pin_ends) return NodalFunction(grid, std::move(v));
  const double a = v.front();
  const double b = v.back();
  return NodalFunction(grid, std::move(v), a, b);
}

NodalFunction prolong(const NodalFunction& u, const Grid1D& target) {
  std::vector<double> v(static_cast<std::size_t>(target.node_count()));
  for (int i = 0; i <= target.cells(); ++i) {
    v[static_cast<std::size_t>(i)] = eval(u, target.node(i));
  }
  if (u.left_bc()) v.front() = *u.left_bc();
  if (u.right_bc()) v.back() = *u.right_bc();
  return NodalFunction(target, std::move(v), u.left_bc(), u.right_bc());
}

double sup_distance(const NodalFunction& u, const NodalFunction& w) {
  double d = 0.0;
  for (int i = 0; i <= u.grid().cells(); ++i) {
    const double x = u.grid().node(i);
    d = std::max(d, std::abs(u.value(i) - eval(w, x)));
  }
  return d;
}

}  // namespace nlvar
