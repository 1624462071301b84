// Acceptance suite: one PASS/FAIL line per criterion, measured values
// alongside. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "nlvar/energy.hpp"
#include "nlvar/grid.hpp"
#include "nlvar/integrand.hpp"
#include "nlvar/optimality.hpp"
#include "nlvar/reference.hpp"
#include "nlvar/solver.hpp"
#include "nlvar_cli/commands.hpp"
#include "nlvar_cli/curve_io.hpp"
#include "oracles.hpp"

using namespace nlvar;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("nlvar_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "nlvar");
  std::ostringstream out, err;
  return cli::run(args, out, err);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

SolverConfig tight(int n) {
  SolverConfig cfg = default_solver_config(n);
  cfg.grad_tol = 1e-8;
  return cfg;
}

Outcome affine_exactness() {
  double worst = 0.0;
  for (int n : {16, 64, 256}) {
    const NodalFunction u = linear_interpolant(Grid1D(n), {0.0, 1.0});
    worst = std::max(worst, std::abs(energy(u, power_p(2.0)).value - 1.0));
    worst = std::max(worst, std::abs(energy(u, half_square()).value - 0.5));
  }
  return {worst <= 1e-12, "max abs error " + fmt("%.3g", worst)};
}

Outcome constant_minimizers() {
  double worst = 0.0;
  const Grid1D g(64);
  for (double c : {0.0, 1.0, -3.0}) {
    for (double p : {2.0, 3.0, 4.0}) {
      worst = std::max(worst, energy(constant_function(g, c), power_p(p)).value);
    }
  }
  return {worst <= 1e-14, "max energy " + fmt("%.3g", worst)};
}

Outcome gradient_oracle() {
  const Grid1D g(32);
  const std::vector<std::pair<std::string, Integrand>> integrands = {
      {"power:3", power_p(3.0)},
      {"half-square", half_square()},
      {"quad-mass", quadratic_mass()},
      {"two-well", two_well_full()},
      {"two-well-bare", two_well_bare()}};
  double worst = 0.0;
  std::string worst_name;
  for (const auto& [name, I] : integrands) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const NodalFunction u = oracle::random_nodal(g, {0.0, 1.0}, seed, 0.05);
      const double e = oracle::max_relative_error(energy_gradient(u, I),
                                                  oracle::fd_gradient(u, I, 1e-6));
      if (e > worst) {
        worst = e;
        worst_name = name;
      }
    }
  }
  return {worst <= 1e-6, "max rel error " + fmt("%.3g", worst) + " (" + worst_name + ")"};
}

Outcome linear_not_optimal() {
  const Grid1D g(128);
  const NodalFunction u = linear_interpolant(g, {0.0, 1.0});
  const double r = residual(u, half_square(), 0.25);
  const double target = -2.0 * std::log(3.0);
  const MinimizeResult m = minimize(half_square(), g, {0.0, 1.0}, InitPolicy::Linear,
                                    default_solver_config(128));
  const double margin = 0.5 - m.energy;
  const bool pass = std::abs(r - target) <= 1e-2 && margin >= 1e-3;
  return {pass, "R(0.25)=" + fmt("%.6f", r) + " vs " + fmt("%.6f", target) +
                    ", energy margin " + fmt("%.6f", margin)};
}

Outcome stationarity() {
  const auto norm_at = [](int n) {
    const MinimizeResult m =
        minimize(half_square(), Grid1D(n), {0.0, 1.0}, InitPolicy::Linear, tight(n));
    return residual_report(m.u, half_square()).norm_l2;
  };
  const double r128 = norm_at(128);
  const double r256 = norm_at(256);
  return {r128 <= 1e-2 && r256 <= r128,
          "norm_l2 n=128 " + fmt("%.4g", r128) + ", n=256 " + fmt("%.4g", r256)};
}

Outcome uniqueness_symmetry() {
  const int n = 64;
  const Grid1D g(n);
  SolverConfig cfg = tight(n);
  const MinimizeResult a = minimize(half_square(), g, {0.0, 1.0}, InitPolicy::Linear, cfg);
  cfg.seed = 2024;
  const MinimizeResult b = minimize(half_square(), g, {0.0, 1.0}, InitPolicy::Random, cfg);
  const double gap = sup_distance(a.u, b.u);
  double reflect = 0.0;
  for (int i = 0; i <= n; ++i) {
    reflect = std::max(reflect, std::abs(a.u.value(i) + a.u.value(n - i) - 1.0));
  }
  return {a.converged && b.converged && gap <= 1e-5 && reflect <= 1e-5,
          "init gap " + fmt("%.3g", gap) + ", reflection " + fmt("%.3g", reflect)};
}

Outcome bolza_trivial() {
  const Grid1D g(128);
  const NodalFunction zero = NodalFunction::pinned(
      g, std::vector<double>(static_cast<std::size_t>(g.node_count()), 0.0), {0.0, 0.0});
  const double sup = residual_report(zero, two_well_full()).norm_sup;
  return {sup <= 1e-10, "norm_sup " + fmt("%.3g", sup)};
}

Outcome pv_convergence() {
  const auto max_error = [](int n) {
    const Grid1D g(n);
    double worst = 0.0;
    for (int k = 1; k < n; ++k) {
      worst = std::max(worst, std::abs(pv_log_quadrature(g, k) - pv_log(g.node(k))));
    }
    return worst;
  };
  const double e64 = max_error(64);
  const double e128 = max_error(128);
  const double ratio = e128 / e64;
  return {ratio >= 0.4 && ratio <= 0.6, "max error n=64 " + fmt("%.4g", e64) + ", n=128 " +
                                            fmt("%.4g", e128) + ", ratio " + fmt("%.3f", ratio)};
}

Outcome ode_pipeline() {
  // 1/∫₀¹ x^{2x}(1-x)^{2(1-x)} dx from an independent 30-digit quadrature.
  constexpr double kReference = 2.5162088822971746;
  const double k = normalize_k();
  const ReferenceProfile p = ode_approx_profile(Grid1D(128));
  const double ends = std::max({std::abs(p.u(0.0)), std::abs(p.u(1.0) - 1.0),
                                std::abs(p.u(0.5) - 0.5)});
  const fs::path dir = scratch("fig1");
  const int code = cli({"reproduce", "fig1-ode-approx", "--out", dir.string()});
  const bool curves = code == cli::kSuccess &&
                      !slurp(dir / "fig1_derivative_k_normalized.csv").empty() &&
                      !slurp(dir / "fig1_derivative_k2.csv").empty();
  return {std::abs(k - kReference) <= 1e-8 && ends <= 1e-6 && curves,
          "k=" + fmt("%.12f", k) + ", end/mid error " + fmt("%.3g", ends) +
              ", both curves " + (curves ? "written" : "missing")};
}

Outcome fig3() {
  const fs::path dir = scratch("fig3");
  const int code = cli({"reproduce", "fig3-quad-mass", "--n", "128", "--out", dir.string()});
  if (code != cli::kSuccess) return {false, "reproduce exit " + std::to_string(code)};
  const NodalFunction u = cli::read_curve(dir / "fig3_minimizer.csv");
  const NodalFunction w = cli::read_curve(dir / "fig3_local_exp.csv");
  const int n = u.grid().cells();
  const double ends = std::max({std::abs(u.value(0)), std::abs(u.value(n) - 1.0),
                                std::abs(local_exp_solution(0.0)),
                                std::abs(local_exp_solution(1.0) - 1.0)});
  return {ends <= 1e-9,
          "end error " + fmt("%.3g", ends) + ", sup distance " + fmt("%.4f", sup_distance(u, w))};
}

Outcome fig4() {
  const fs::path a = scratch("fig4a");
  const fs::path b = scratch("fig4b");
  for (const fs::path& d : {a, b}) {
    const int code = cli({"reproduce", "fig4-bolza", "--n", "64", "--out", d.string()});
    if (code != cli::kSuccess) return {false, "reproduce exit " + std::to_string(code)};
  }
  bool same = true;
  for (const char* f : {"fig4_n64.csv", "fig4_n128.csv"}) {
    same = same && !slurp(a / f).empty() && slurp(a / f) == slurp(b / f);
  }
  const NodalFunction u64 = cli::read_curve(a / "fig4_n64.csv");
  const NodalFunction u128 = cli::read_curve(a / "fig4_n128.csv");
  const double e64 = energy(u64, two_well_bare()).value;
  const double e128 = energy(u128, two_well_bare()).value;
  return {same && e64 <= 0.25 && e128 <= 0.25,
          std::string(same ? "deterministic" : "NOT deterministic") + ", energies " +
              fmt("%.6f", e64) + " / " + fmt("%.6f", e128) + ", sup distance " +
              fmt("%.4g", sup_distance(prolong(u64, u128.grid()), u128))};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"affine exactness", affine_exactness},
      {"constant minimizers", constant_minimizers},
      {"gradient oracle", gradient_oracle},
      {"linear function is not optimal", linear_not_optimal},
      {"stationarity of the problem-1 minimizer", stationarity},
      {"uniqueness and symmetry", uniqueness_symmetry},
      {"bolza trivial solution", bolza_trivial},
      {"principal-value quadrature convergence", pv_convergence},
      {"ode-approximation pipeline", ode_pipeline},
      {"quad-mass figure", fig3},
      {"bolza figure", fig4},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed;
}
