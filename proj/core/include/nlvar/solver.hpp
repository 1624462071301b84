#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "nlvar/errors.hpp"
#include "nlvar/grid.hpp"
#include "nlvar/integrand.hpp"

namespace nlvar {

struct SolverConfig {
  int max_iters = 20000;
  double grad_tol = 1e-8;  ///< stop when the Euclidean gradient norm is below
  double initial_step = 1.0;
  double shrink = 0.5;
  double sufficient_decrease = 1e-4;
  int memory = 10;  ///< 0 selects plain gradient descent
  std::uint64_t seed = 0;

  /// Throws ParameterError when a field is out of range.
  void validate() const;
};

/// Defaults with grad_tol = 1e-8 up to 128 cells and 1e-6 beyond.
SolverConfig default_solver_config(int n);

enum class InitPolicy {
  Linear,  ///< linear interpolant of the end conditions
  Zero,    ///< u = 0 in the interior
  Random,  ///< linear interpolant plus a seeded uniform perturbation
  Hat,     ///< linear interpolant plus min(x, 1-x)
};

using Initial = std::variant<InitPolicy, NodalFunction>;

NodalFunction initial_guess(const Grid1D& grid, BoundaryConditions bc,
                            InitPolicy policy, std::uint64_t seed);

struct TraceEntry {
  double energy;
  double grad_norm;
};

struct MinimizeResult {
  NodalFunction u;
  double energy = 0.0;
  double grad_norm = 0.0;
  int iters = 0;
  std::vector<TraceEntry> trace;
  bool converged = false;
};

/// Raised when backtracking drives the step below resolution; carries the
/// trace up to the failure.
class LineSearchError : public Error {
 public:
  LineSearchError(const std::string& what, std::vector<TraceEntry> trace)
      : Error(what), trace_(std::move(trace)) {}
  const std::vector<TraceEntry>& trace() const noexcept { return trace_; }

 private:
  std::vector<TraceEntry> trace_;
};

/// Minimizes the discrete energy over interior nodal values with the end
/// values held fixed, by limited-memory quasi-Newton (or gradient descent
/// when cfg.memory == 0) with backtracking sufficient-decrease line search.
///
/// Energies in the trace never increase. When the gradient tolerance is not
/// met within max_iters the last (lowest-energy) iterate is returned with
/// converged = false. Throws NonFiniteEnergyError for a non-finite start.
MinimizeResult minimize(const Integrand& I, const Grid1D& grid,
                        BoundaryConditions bc, const Initial& init,
                        const SolverConfig& cfg);

struct ContinuationResult {
  MinimizeResult result;
  std::vector<int> levels;
  /// Sup-norm gap between the solution at each level and the prolonged
  /// solution of the level before it; one entry per refinement.
  std::vector<double> deltas;
};

/// Solves on n_start cells, prolongs by linear interpolation to twice as many
/// cells, re-solves, and repeats until n_end. Requires n_end = n_start * 2^k.
ContinuationResult continuation_refine(const Integrand& I,
                                       BoundaryConditions bc, int n_start,
                                       int n_end, const SolverConfig& cfg,
                                       InitPolicy init = InitPolicy::Linear);

}  // namespace nlvar
