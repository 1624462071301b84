#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace nlvar {

/// Uniform partition of (0,1) into n cells of width h = 1/n.
///
/// Nodes are x_i = i/n for i = 0..n, cell midpoints m_i = (i + 1/2)/n for
/// i = 0..n-1. Both are computed by a single correctly rounded division so
/// that x_0 = 0 and x_n = 1 hold exactly.
class Grid1D {
 public:
  /// Throws InvalidGridError when n < 2.
  explicit Grid1D(int n);

  int cells() const noexcept { return n_; }
  int node_count() const noexcept { return n_ + 1; }
  double spacing() const noexcept { return h_; }

  double node(int i) const noexcept { return static_cast<double>(i) / n_; }
  double midpoint(int i) const noexcept { return (i + 0.5) / n_; }

  std::vector<double> nodes() const;
  std::vector<double> midpoints() const;

  /// Index of the cell containing t, with t = 1 assigned to the last cell.
  int cell_of(double t) const noexcept;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  int n_;
  double h_;
};

Grid1D make_uniform_grid(int n);

struct BoundaryConditions {
  double left = 0.0;
  double right = 1.0;
};

/// Continuous piecewise-linear function on a Grid1D, described by its nodal
/// values, optionally pinned at one or both end points.
class NodalFunction {
 public:
  /// Throws ParameterError if the value count is not n+1 or if a supplied
  /// end value disagrees with the corresponding nodal value.
  NodalFunction(Grid1D grid, std::vector<double> values,
                std::optional<double> left_bc = std::nullopt,
                std::optional<double> right_bc = std::nullopt);

  /// Overwrites the end values with bc and pins them.
  static NodalFunction pinned(Grid1D grid, std::vector<double> values,
                              BoundaryConditions bc);

  const Grid1D& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double value(int i) const { return values_.at(static_cast<std::size_t>(i)); }
  std::optional<double> left_bc() const noexcept { return left_bc_; }
  std::optional<double> right_bc() const noexcept { return right_bc_; }

  /// Slope of cell i.
  double cell_slope(int i) const noexcept;
  /// Value at the midpoint of cell i.
  double midpoint_value(int i) const noexcept;

  /// Copy with interior nodal values replaced; end values are kept.
  NodalFunction with_interior(std::span<const double> interior) const;

 private:
  Grid1D grid_;
  std::vector<double> values_;
  std::optional<double> left_bc_;
  std::optional<double> right_bc_;
};

/// Piecewise-linear interpolation. Throws DomainError outside [0,1].
double eval(const NodalFunction& u, double t);

/// Du(s,t) = (u(t) - u(s)) / (t - s). For |t - s| <= h * 1e-9 the slope of
/// the cell containing (s+t)/2 is returned instead.
double difference_quotient(const NodalFunction& u, double s, double t);

inline constexpr double kDiagonalTolerance = 1e-9;

NodalFunction linear_interpolant(const Grid1D& grid, BoundaryConditions bc);

/// u = c with no end-point constraints.
NodalFunction constant_function(const Grid1D& grid, double c);

/// Nodal sampling of f; pins the end values to f(0), f(1) when pin_ends is set.
NodalFunction sample(const Grid1D& grid, const std::function<double(double)>& f,
                     bool pin_ends = true);

/// Linear interpolation of u onto the nodes of another grid. End constraints
/// carry over.
NodalFunction prolong(const NodalFunction& u, const Grid1D& target);

/// max_i |u(x_i) - w(x_i)| over the nodes of u's grid.
double sup_distance(const NodalFunction& u, const NodalFunction& w);

}  // namespace nlvar
