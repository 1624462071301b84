#include "nlvar/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <sstream>

#include "nlvar/energy.hpp"

namespace nlvar {

void SolverConfig::validate() const {
  if (max_iters < 1) throw ParameterError("max_iters must be >= 1");
  if (!(grad_tol > 0.0)) throw ParameterError("grad_tol must be positive");
  if (!(initial_step > 0.0)) throw ParameterError("initial_step must be positive");
  if (!(shrink > 0.0 && shrink < 1.0)) {
    throw ParameterError("shrink factor must lie in (0,1)");
  }
  if (!(sufficient_decrease > 0.0 && sufficient_decrease < 1.0)) {
    throw ParameterError("sufficient-decrease constant must lie in (0,1)");
  }
  if (memory < 0) throw ParameterError("memory must be >= 0");
}

SolverConfig default_solver_config(int n) {
  SolverConfig cfg;
  cfg.grad_tol = n <= 128 ? 1e-8 : 1e-6;
  return cfg;
}

NodalFunction initial_guess(const Grid1D& grid, BoundaryConditions bc,
                            InitPolicy policy, std::uint64_t seed) {
  NodalFunction linear = linear_interpolant(grid, bc);
  std::vector<double> v(linear.values().begin(), linear.values().end());
  switch (policy) {
    case InitPolicy::Linear:
      return linear;
    case InitPolicy::Zero:
      std::fill(v.begin() + 1, v.end() - 1, 0.0);
      break;
    case InitPolicy::Random: {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> jitter(-0.25, 0.25);
      for (std::size_t i = 1; i + 1 < v.size(); ++i) v[i] += jitter(rng);
      break;
    }
    case InitPolicy::Hat:
      for (int i = 1; i < grid.cells(); ++i) {
        const double x = grid.node(i);
        v[static_cast<std::size_t>(i)] += std::min(x, 1.0 - x);
      }
      break;
  }
  return NodalFunction::pinned(grid, std::move(v), bc);
}

namespace {

constexpr double kResolution = 1e3 * std::numeric_limits<double>::epsilon();

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

struct CorrectionPair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

// Two-loop recursion: returns -H g for the limited-memory inverse Hessian.
std::vector<double> quasi_newton_direction(
    const std::deque<CorrectionPair>& history, std::span<const double> g) {
  std::vector<double> q(g.begin(), g.end());
  std::vector<double> alpha(history.size());
  for (std::size_t k = history.size(); k-- > 0;) {
    const CorrectionPair& c = history[k];
    alpha[k] = c.rho * dot(c.s, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= alpha[k] * c.y[i];
  }
  const CorrectionPair& last = history.back();
  const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
  for (double& qi : q) qi *= gamma;
  for (std::size_t k = 0; k < history.size(); ++k) {
    const CorrectionPair& c = history[k];
    const double beta = c.rho * dot(c.y, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += (alpha[k] - beta) * c.s[i];
  }
  for (double& qi : q) qi = -qi;
  return q;
}

}  // namespace

MinimizeResult minimize(const Integrand& I, const Grid1D& grid,
                        BoundaryConditions bc, const Initial& init,
                        const SolverConfig& cfg) {
  cfg.validate();
  const NodalFunction start =
      std::holds_alternative<NodalFunction>(init)
          ? std::get<NodalFunction>(init)
          : initial_guess(grid, bc, std::get<InitPolicy>(init), cfg.seed);
  if (!(start.grid() == grid)) {
    throw ParameterError("initial function lives on a different grid");
  }
  if (start.values().front() != bc.left || start.values().back() != bc.right) {
    throw ParameterError("initial function violates the end conditions");
  }

  const auto m = static_cast<std::size_t>(grid.cells() - 1);
  std::vector<double> values(start.values().begin(), start.values().end());
  values.front() = bc.left;
  values.back() = bc.right;
  std::vector<double> g(m);
  double E = energy_value_and_gradient(grid, values, I, g);
  if (!std::isfinite(E)) {
    throw NonFiniteEnergyError("initial energy is not finite", 0.0, 1.0);
  }
  double gnorm = norm(g);

  MinimizeResult result{
      NodalFunction::pinned(grid, values, bc), E, gnorm, 0, {{E, gnorm}}, false};

  std::deque<CorrectionPair> history;
  std::vector<double> trial(values);
  std::vector<double> g_trial(m);
  double last_step = cfg.initial_step;

  int iter = 0;
  while (true) {
    if (gnorm <= cfg.grad_tol) {
      result.converged = true;
      break;
    }
    if (iter == cfg.max_iters) break;

    std::vector<double> d;
    if (cfg.memory > 0 && !history.empty()) {
      d = quasi_newton_direction(history, g);
    }
    double slope = d.empty() ? 0.0 : dot(d, g);
    if (d.empty() || !(slope < 0.0)) {
      history.clear();
      d.assign(g.begin(), g.end());
      for (double& di : d) di = -di;
      slope = -gnorm * gnorm;
    }

    double alpha;
    if (!history.empty()) {
      alpha = 1.0;
    } else if (cfg.memory > 0) {
      alpha = cfg.initial_step / std::max(1.0, gnorm);
    } else {
      alpha = std::min(cfg.initial_step, 2.0 * last_step);
    }

    const double dnorm = norm(d);
    const double xnorm = norm(std::span<const double>(values).subspan(1, m));
    double E_trial = 0.0;
    while (true) {
      for (std::size_t i = 0; i < m; ++i) trial[i + 1] = values[i + 1] + alpha * d[i];
      bool finite = true;
      try {
        E_trial = energy_value_and_gradient(grid, trial, I, g_trial);
        finite = std::isfinite(E_trial);
      } catch (const NonFiniteEnergyError&) {
        finite = false;
      }
      if (finite && E_trial <= E + cfg.sufficient_decrease * alpha * slope) break;
      // Once the predicted decrease drops below the resolution of E the
      // sufficient-decrease test is noise; accept a non-increasing step that
      // shrinks the gradient instead.
      const bool unresolved =
          std::abs(alpha * slope) <= kResolution * std::max(1.0, std::abs(E));
      if (finite && unresolved && E_trial <= E && norm(g_trial) < gnorm) break;
      alpha *= cfg.shrink;
      if (alpha * dnorm <= std::numeric_limits<double>::epsilon() * std::max(1.0, xnorm)) {
        std::ostringstream msg;
        msg << "line search failed at iteration " << iter << " (energy " << E
            << ", gradient norm " << gnorm << ")";
        throw LineSearchError(msg.str(), result.trace);
      }
    }

    if (cfg.memory > 0) {
      CorrectionPair c{std::vector<double>(m), std::vector<double>(m), 0.0};
      for (std::size_t i = 0; i < m; ++i) {
        c.s[i] = trial[i + 1] - values[i + 1];
        c.y[i] = g_trial[i] - g[i];
      }
      const double sy = dot(c.s, c.y);
      if (sy > 1e-12 * norm(c.s) * norm(c.y)) {
        c.rho = 1.0 / sy;
        history.push_back(std::move(c));
        if (history.size() > static_cast<std::size_t>(cfg.memory)) {
          history.pop_front();
        }
      }
    }

    last_step = alpha;
    values.swap(trial);
    g.swap(g_trial);
    E = E_trial;
    gnorm = norm(g);
    ++iter;
    result.trace.push_back({E, gnorm});
  }

  result.u = NodalFunction::pinned(grid, values, bc);
  result.energy = E;
  result.grad_norm = gnorm;
  result.iters = iter;
  return result;
}

ContinuationResult continuation_refine(const Integrand& I,
                                       BoundaryConditions bc, int n_start,
                                       int n_end, const SolverConfig& cfg,
                                       InitPolicy init) {
  if (n_start < 2 || n_end < n_start) {
    throw ParameterError("continuation needs 2 <= n_start <= n_end");
  }
  int n = n_start;
  while (n < n_end) n *= 2;
  if (n != n_end) {
    throw ParameterError("n_end must be n_start times a power of two");
  }

  ContinuationResult out{minimize(I, Grid1D(n_start), bc, init, cfg), {n_start}, {}};
  for (n = 2 * n_start; n <= n_end; n *= 2) {
    const Grid1D fine(n);
    const NodalFunction guess = prolong(out.result.u, fine);
    MinimizeResult next = minimize(I, fine, bc, guess, cfg);
    out.deltas.push_back(sup_distance(next.u, guess));
    out.levels.push_back(n);
    out.result = std::move(next);
  }
  return out;
}

}  // namespace nlvar
