#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "nlvar/grid.hpp"
#include "nlvar/solver.hpp"

namespace nlvar::cli {

/// Malformed or inconsistent experiment description (exit code 2).
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a subcommand needs. Unset optionals fall back to the problem
/// preset, then to the built-in defaults.
struct ExperimentSpec {
  std::optional<std::string> problem;
  std::optional<std::string> integrand;
  std::optional<int> n;
  std::optional<BoundaryConditions> bc;
  std::optional<std::string> u;     ///< input curve: named profile or CSV path
  std::optional<std::string> init;  ///< linear | zero | random | hat | CSV path
  std::optional<std::uint64_t> seed;
  std::optional<int> max_iters;
  std::optional<double> grad_tol;
  std::optional<int> memory;
  std::optional<std::string> figure;
  std::filesystem::path out = ".";
  bool csv = true;
  bool svg = false;
};

/// Applies `key = value` to the spec. Throws SpecError for unknown keys or
/// unparseable values.
void set_key(ExperimentSpec& spec, const std::string& key, const std::string& value);

/// Flat `key = value` lines; `#` starts a comment, blank lines are ignored.
ExperimentSpec parse_config(const std::string& text);
ExperimentSpec load_config(const std::filesystem::path& path);

/// Fields of `overrides` that are set replace those in `base`.
void merge(ExperimentSpec& base, const ExperimentSpec& overrides,
           bool out_set, bool svg_set);

BoundaryConditions parse_bc(const std::string& text);

struct ProblemPreset {
  std::string integrand;
  BoundaryConditions bc;
  InitPolicy init;
};

/// problem1, quad-mass, bolza, bolza-bare.
ProblemPreset problem_preset(const std::string& name);

/// Resolved views with presets and defaults applied.
std::string resolved_integrand(const ExperimentSpec& spec);
BoundaryConditions resolved_bc(const ExperimentSpec& spec);
int resolved_n(const ExperimentSpec& spec, int fallback = 64);
SolverConfig resolved_solver_config(const ExperimentSpec& spec, int n);
InitPolicy parse_init_policy(const std::string& name);

}  // namespace nlvar::cli
