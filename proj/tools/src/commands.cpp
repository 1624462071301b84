#include "nlvar_cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>

#include "nlvar/energy.hpp"
#include "nlvar/integrand.hpp"
#include "nlvar/optimality.hpp"
#include "nlvar/reference.hpp"
#include "nlvar/solver.hpp"
#include "nlvar_cli/curve_io.hpp"
#include "nlvar_cli/svg.hpp"

namespace nlvar::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kNonConvexWarning =
    "warning: non-convex density; the curve is a critical point reached from the "
    "chosen start, not a certified minimizer, and may change with the start or "
    "the grid";

std::string full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool is_two_well(const Integrand& I) {
  return I.name == "two-well" || I.name == "two-well-bare";
}

Integrand spec_integrand(const ExperimentSpec& spec) {
  try {
    return integrand_by_name(resolved_integrand(spec));
  } catch (const ParameterError& e) {
    throw SpecError(e.what());
  }
}

// Runs fn and maps exceptions onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const SpecError& e) {
    err << "error: " << e.what() << '\n';
    return kSpecError;
  } catch (const InvalidGridError& e) {
    err << "error: " << e.what() << '\n';
    return kSpecError;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kSpecError;
  } catch (const NonFiniteEnergyError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  } catch (const LineSearchError& e) {
    err << "numeric error: " << e.what() << " after " << e.trace().size()
        << " trace entries\n";
    return kNumericError;
  } catch (const nlvar::Error& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  }
}

NodalFunction solve_from_spec(const ExperimentSpec& spec, const Integrand& I,
                              MinimizeResult* summary);

// Named profiles, "minimize", or a curve file.
NodalFunction input_curve(const ExperimentSpec& spec, const Integrand& I) {
  const std::string name = spec.u.value_or("linear");
  const Grid1D grid(resolved_n(spec));
  const BoundaryConditions bc = resolved_bc(spec);
  if (name == "linear") return linear_interpolant(grid, bc);
  if (name == "zero") return NodalFunction::pinned(grid, std::vector<double>(grid.node_count(), 0.0), {0.0, 0.0});
  if (name.starts_with("constant:")) {
    double c = 0.0;
    try {
      c = std::stod(name.substr(9));
    } catch (const std::exception&) {
      throw SpecError("bad constant in '" + name + "'");
    }
    return constant_function(grid, c);
  }
  if (name == "square") return sample(grid, [](double x) { return x * x; });
  if (name == "hat") return sample(grid, [](double x) { return std::min(x, 1.0 - x); });
  if (name == "ode-approx") {
    ReferenceProfile p = ode_approx_profile(grid);
    std::vector<double> v(p.nodal->values().begin(), p.nodal->values().end());
    return NodalFunction::pinned(grid, std::move(v), {0.0, 1.0});
  }
  if (name == "local-exp") return sample(grid, local_exp_solution);
  if (name == "minimize") return solve_from_spec(spec, I, nullptr);
  if (!fs::exists(name)) {
    throw SpecError("input curve '" + name + "' is neither a known profile nor a file");
  }
  return read_curve(name);
}

Initial initial_from_spec(const ExperimentSpec& spec, const Grid1D& grid) {
  const std::string name = spec.init.value_or(
      spec.problem ? (problem_preset(*spec.problem).init == InitPolicy::Zero ? "zero" : "linear")
                   : "linear");
  if (name == "linear" || name == "zero" || name == "random" || name == "hat") {
    return parse_init_policy(name);
  }
  if (!fs::exists(name)) throw SpecError("unknown init '" + name + "'");
  NodalFunction u = read_curve(name);
  if (!(u.grid() == grid)) throw SpecError("init curve does not match n");
  return u;
}

NodalFunction solve_from_spec(const ExperimentSpec& spec, const Integrand& I,
                              MinimizeResult* summary) {
  const Grid1D grid(resolved_n(spec));
  MinimizeResult r = minimize(I, grid, resolved_bc(spec), initial_from_spec(spec, grid),
                              resolved_solver_config(spec, grid.cells()));
  if (summary) *summary = r;
  return r.u;
}

std::string stem_for(const ExperimentSpec& spec, int n) {
  std::string base = spec.problem.value_or(resolved_integrand(spec));
  std::replace(base.begin(), base.end(), ':', '_');
  return base + "_n" + std::to_string(n);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw SpecError("cannot create output directory " + dir.string());
}

PlotSeries series_of(const std::string& label, const NodalFunction& u) {
  return {label, u.grid().nodes(), std::vector<double>(u.values().begin(), u.values().end())};
}

void print_result(std::ostream& out, const MinimizeResult& r) {
  out << "n: " << r.u.grid().cells() << '\n'
      << "energy: " << full(r.energy) << '\n'
      << "grad_norm: " << full(r.grad_norm) << '\n'
      << "iters: " << r.iters << '\n'
      << "converged: " << (r.converged ? "yes" : "no") << '\n';
}

// Nodal derivative by central differences, one-sided at the ends.
std::vector<double> nodal_derivative(const NodalFunction& u) {
  const int n = u.grid().cells();
  std::vector<double> d(static_cast<std::size_t>(n + 1));
  d.front() = u.cell_slope(0);
  d.back() = u.cell_slope(n - 1);
  for (int i = 1; i < n; ++i) {
    d[static_cast<std::size_t>(i)] = 0.5 * (u.cell_slope(i - 1) + u.cell_slope(i));
  }
  return d;
}

MinimizeResult solve_problem(const std::string& problem, int n, const ExperimentSpec& spec,
                             std::optional<InitPolicy> init = std::nullopt) {
  const ProblemPreset preset = problem_preset(problem);
  const Integrand I = integrand_by_name(preset.integrand);
  return minimize(I, Grid1D(n), preset.bc, init.value_or(preset.init),
                  resolved_solver_config(spec, n));
}

int reproduce_fig1(const ExperimentSpec& spec, std::ostream& out) {
  constexpr int samples = 512;
  const Grid1D grid(samples - 1);
  const std::vector<double> x = grid.nodes();
  const double k_norm = normalize_k();
  std::vector<double> d_norm(x.size());
  std::vector<double> d_two(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    d_norm[i] = ode_approx_derivative(x[i], k_norm);
    d_two[i] = ode_approx_derivative(x[i], 2.0);
  }
  const ReferenceProfile profile = ode_approx_profile(grid);
  if (spec.csv) {
    write_curve(spec.out / "fig1_derivative_k_normalized.csv", x, d_norm);
    write_curve(spec.out / "fig1_derivative_k2.csv", x, d_two);
    write_curve(spec.out / "fig1_profile.csv", *profile.nodal);
  }
  if (spec.svg) {
    write_svg(spec.out / "fig1_ode_approx.svg", "approximate derivative k x^{2x}(1-x)^{2(1-x)}",
              {{"k = " + short_num(k_norm) + " (normalized)", x, d_norm}, {"k = 2", x, d_two}});
  }
  out << "k_normalized: " << full(k_norm) << '\n'
      << "k_figure: 2\n"
      << "k_gap: " << full(k_norm - 2.0) << '\n';
  return kSuccess;
}

int reproduce_fig2(const ExperimentSpec& spec, std::ostream& out) {
  const int n = resolved_n(spec, 128);
  const MinimizeResult r = solve_problem("problem1", n, spec);
  const std::vector<double> x = r.u.grid().nodes();
  const std::vector<double> du = nodal_derivative(r.u);
  const ReferenceProfile ode = ode_approx_profile(r.u.grid());
  if (spec.csv) {
    write_curve(spec.out / "fig2_minimizer.csv", r.u);
    write_curve(spec.out / "fig2_derivative.csv", x, du);
    write_curve(spec.out / "fig2_ode_approx.csv", *ode.nodal);
  }
  if (spec.svg) {
    write_svg(spec.out / "fig2_problem1.svg", "quadratic homogeneous case",
              {series_of("minimizer n=" + std::to_string(n), r.u),
               series_of("ode approximation", *ode.nodal)});
    write_svg(spec.out / "fig2_derivative.svg", "derivative of the minimizer",
              {{"finite-difference derivative", x, du}});
  }
  print_result(out, r);
  out << "sup_distance_to_ode_approx: " << full(sup_distance(r.u, *ode.nodal)) << '\n';
  return r.converged ? kSuccess : kNotConverged;
}

int reproduce_fig3(const ExperimentSpec& spec, std::ostream& out) {
  const int n = resolved_n(spec, 128);
  const MinimizeResult r = solve_problem("quad-mass", n, spec);
  const ReferenceProfile local = local_exp_profile(r.u.grid());
  if (spec.csv) {
    write_curve(spec.out / "fig3_minimizer.csv", r.u);
    write_curve(spec.out / "fig3_local_exp.csv", *local.nodal);
  }
  if (spec.svg) {
    write_svg(spec.out / "fig3_quad_mass.svg", "quadratic case with mass term",
              {series_of("non-local minimizer n=" + std::to_string(n), r.u),
               series_of("local solution", *local.nodal)});
  }
  print_result(out, r);
  out << "sup_distance_to_local: " << full(sup_distance(r.u, *local.nodal)) << '\n';
  return r.converged ? kSuccess : kNotConverged;
}

int reproduce_fig4(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  const int n = resolved_n(spec, 64);
  const MinimizeResult coarse = solve_problem("bolza-bare", n, spec);
  const MinimizeResult fine = solve_problem("bolza-bare", 2 * n, spec);
  const MinimizeResult hat_coarse = solve_problem("bolza-bare", n, spec, InitPolicy::Hat);
  const MinimizeResult hat_fine = solve_problem("bolza-bare", 2 * n, spec, InitPolicy::Hat);
  const std::string a = std::to_string(n);
  const std::string b = std::to_string(2 * n);
  if (spec.csv) {
    write_curve(spec.out / ("fig4_n" + a + ".csv"), coarse.u);
    write_curve(spec.out / ("fig4_n" + b + ".csv"), fine.u);
    write_curve(spec.out / ("fig4_hat_n" + a + ".csv"), hat_coarse.u);
    write_curve(spec.out / ("fig4_hat_n" + b + ".csv"), hat_fine.u);
  }
  if (spec.svg) {
    write_svg(spec.out / "fig4_bolza.svg", "non-convex case, zero start",
              {series_of("n=" + a, coarse.u), series_of("n=" + b, fine.u)});
    write_svg(spec.out / "fig4_bolza_hat.svg", "non-convex case, hat start",
              {series_of("n=" + a, hat_coarse.u), series_of("n=" + b, hat_fine.u)});
  }
  err << kNonConvexWarning << '\n';
  out << "energy_n" << a << ": " << full(coarse.energy) << '\n'
      << "energy_n" << b << ": " << full(fine.energy) << '\n'
      << "sup_distance: " << full(sup_distance(fine.u, coarse.u)) << '\n'
      << "hat_energy_n" << a << ": " << full(hat_coarse.energy) << '\n'
      << "hat_energy_n" << b << ": " << full(hat_fine.energy) << '\n'
      << "hat_sup_distance: " << full(sup_distance(hat_fine.u, hat_coarse.u)) << '\n';
  const bool ok = coarse.converged && fine.converged && hat_coarse.converged && hat_fine.converged;
  return ok ? kSuccess : kNotConverged;
}

}  // namespace

int cmd_energy(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Integrand I = spec_integrand(spec);
    const NodalFunction u = input_curve(spec, I);
    const EnergyReport e = energy(u, I);
    out << "integrand: " << e.integrand << '\n'
        << "n: " << e.n << '\n'
        << "h: " << full(u.grid().spacing()) << '\n'
        << "energy: " << full(e.value) << '\n';
    return kSuccess;
  });
}

int cmd_minimize(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Integrand I = spec_integrand(spec);
    MinimizeResult r{constant_function(Grid1D(2), 0.0), 0.0, 0.0, 0, {}, false};
    solve_from_spec(spec, I, &r);
    ensure_dir(spec.out);
    const int n = r.u.grid().cells();
    const std::string stem = stem_for(spec, n);
    std::vector<PlotSeries> plot{series_of("minimizer", r.u)};
    if (spec.csv) write_curve(spec.out / (stem + ".csv"), r.u);
    if (I.name == "quad-mass") {
      const ReferenceProfile local = local_exp_profile(r.u.grid());
      if (spec.csv) write_curve(spec.out / ("local_exp_n" + std::to_string(n) + ".csv"), *local.nodal);
      plot.push_back(series_of("local solution", *local.nodal));
      out << "sup_distance_to_local: " << full(sup_distance(r.u, *local.nodal)) << '\n';
    }
    if (spec.svg) write_svg(spec.out / (stem + ".svg"), stem, plot);
    if (is_two_well(I)) err << kNonConvexWarning << '\n';
    out << "integrand: " << I.name << '\n';
    print_result(out, r);
    if (spec.csv) out << "curve: " << (spec.out / (stem + ".csv")).string() << '\n';
    return r.converged ? kSuccess : kNotConverged;
  });
}

int cmd_residual(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Integrand I = spec_integrand(spec);
    const NodalFunction u = input_curve(spec, I);
    const ResidualReport r = residual_report(u, I);
    out << "x,residual\n";
    for (std::size_t i = 0; i < r.residuals.size(); ++i) {
      out << full(r.x_points[i]) << ',' << full(r.residuals[i]) << '\n';
    }
    out << "norm_l2: " << full(r.norm_l2) << '\n'
        << "norm_sup: " << full(r.norm_sup)
        << (r.sup_excludes_boundary_adjacent ? " (boundary-adjacent nodes excluded)" : "")
        << '\n';
    return kSuccess;
  });
}

int cmd_reproduce(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!spec.figure) throw SpecError("reproduce needs a figure name");
    const std::string& fig = *spec.figure;
    if (std::find(kFigures.begin(), kFigures.end(), fig) == kFigures.end()) {
      throw SpecError("unknown figure '" + fig + "'");
    }
    ensure_dir(spec.out);
    out << "figure: " << fig << '\n';
    if (fig == "fig1-ode-approx") return reproduce_fig1(spec, out);
    if (fig == "fig2-problem1") return reproduce_fig2(spec, out);
    if (fig == "fig3-quad-mass") return reproduce_fig3(spec, out);
    return reproduce_fig4(spec, out, err);
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discretize, minimize and check optimality of 1-D non-local functionals", "nlvar"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config;
  ExperimentSpec flags;
  int n = 0;
  std::string integrand, bc, problem, u, init, out_dir;
  std::uint64_t seed = 0;
  int max_iters = 0, memory = 0;
  double grad_tol = 0.0;
  bool svg = false;

  app.add_option("--config", config, "key=value experiment file");
  auto* n_opt = app.add_option("--n", n, "number of cells");
  auto* integrand_opt = app.add_option("--integrand", integrand,
                                       "power:p | half-square | quad-mass | two-well | two-well-bare");
  auto* bc_opt = app.add_option("--bc", bc, "end conditions a,b");
  auto* seed_opt = app.add_option("--seed", seed, "seed for random initialization");
  auto* out_opt = app.add_option("--out", out_dir, "output directory");
  auto* svg_opt = app.add_flag("--svg", svg, "also write SVG plots");
  auto* problem_opt = app.add_option("--problem", problem, "problem1 | quad-mass | bolza | bolza-bare");
  auto* u_opt = app.add_option("--u", u, "input curve: profile name, 'minimize', or CSV file");
  auto* init_opt = app.add_option("--init", init, "linear | zero | random | hat | CSV file");
  auto* iters_opt = app.add_option("--max-iters", max_iters, "iteration cap");
  auto* tol_opt = app.add_option("--grad-tol", grad_tol, "gradient-norm tolerance");
  auto* memory_opt = app.add_option("--memory", memory, "quasi-Newton memory (0 = gradient descent)");

  auto* energy_cmd = app.add_subcommand("energy", "print the discrete energy of a curve");
  auto* minimize_cmd = app.add_subcommand("minimize", "minimize and write the curve");
  auto* residual_cmd = app.add_subcommand("residual", "optimality residual at interior nodes");
  auto* reproduce_cmd = app.add_subcommand("reproduce", "regenerate a figure's curves");
  std::string figure;
  auto* figure_opt = reproduce_cmd->add_option("figure", figure, "figure name");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kSpecError;
  }

  ExperimentSpec spec;
  try {
    if (!config.empty()) spec = load_config(config);
    if (*problem_opt) set_key(flags, "problem", problem);
    if (*integrand_opt) flags.integrand = integrand;
    if (*n_opt) flags.n = n;
    if (*bc_opt) flags.bc = parse_bc(bc);
    if (*seed_opt) flags.seed = seed;
    if (*u_opt) flags.u = u;
    if (*init_opt) flags.init = init;
    if (*iters_opt) flags.max_iters = max_iters;
    if (*tol_opt) flags.grad_tol = grad_tol;
    if (*memory_opt) flags.memory = memory;
    if (*figure_opt) flags.figure = figure;
    if (*out_opt) flags.out = out_dir;
    flags.svg = svg;
    merge(spec, flags, static_cast<bool>(*out_opt), static_cast<bool>(*svg_opt));
  } catch (const SpecError& e) {
    err << "error: " << e.what() << '\n';
    return kSpecError;
  }

  if (energy_cmd->parsed()) return cmd_energy(spec, out, err);
  if (minimize_cmd->parsed()) return cmd_minimize(spec, out, err);
  if (residual_cmd->parsed()) return cmd_residual(spec, out, err);
  return cmd_reproduce(spec, out, err);
}

}  // namespace nlvar::cli
