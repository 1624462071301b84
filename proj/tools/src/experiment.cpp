#include "nlvar_cli/experiment.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace nlvar::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw SpecError("bad value '" + text + "' for key '" + key + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw SpecError("bad boolean '" + text + "' for key '" + key + "'");
}

}  // namespace

BoundaryConditions parse_bc(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw SpecError("end conditions must look like 'a,b', got '" + text + "'");
  }
  return {parse_number<double>("bc", trim(text.substr(0, comma))),
          parse_number<double>("bc", trim(text.substr(comma + 1)))};
}

void set_key(ExperimentSpec& spec, const std::string& key, const std::string& value) {
  if (key == "problem") {
    problem_preset(value);
    spec.problem = value;
  } else if (key == "integrand") {
    spec.integrand = value;
  } else if (key == "n") {
    spec.n = parse_number<int>(key, value);
  } else if (key == "bc") {
    spec.bc = parse_bc(value);
  } else if (key == "u") {
    spec.u = value;
  } else if (key == "init") {
    spec.init = value;
  } else if (key == "seed") {
    spec.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "max_iters") {
    spec.max_iters = parse_number<int>(key, value);
  } else if (key == "grad_tol") {
    spec.grad_tol = parse_number<double>(key, value);
  } else if (key == "memory") {
    spec.memory = parse_number<int>(key, value);
  } else if (key == "figure") {
    spec.figure = value;
  } else if (key == "out") {
    spec.out = value;
  } else if (key == "svg") {
    spec.svg = parse_bool(key, value);
  } else if (key == "formats") {
    spec.csv = false;
    spec.svg = false;
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
      item = trim(item);
      if (item == "csv") {
        spec.csv = true;
      } else if (item == "svg") {
        spec.svg = true;
      } else {
        throw SpecError("unknown output format '" + item + "'");
      }
    }
  } else {
    throw SpecError("unknown key '" + key + "'");
  }
}

ExperimentSpec parse_config(const std::string& text) {
  ExperimentSpec spec;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw SpecError("line " + std::to_string(lineno) + ": expected key = value");
    }
    set_key(spec, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return spec;
}

ExperimentSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

void merge(ExperimentSpec& base, const ExperimentSpec& o, bool out_set, bool svg_set) {
  if (o.problem) base.problem = o.problem;
  if (o.integrand) base.integrand = o.integrand;
  if (o.n) base.n = o.n;
  if (o.bc) base.bc = o.bc;
  if (o.u) base.u = o.u;
  if (o.init) base.init = o.init;
  if (o.seed) base.seed = o.seed;
  if (o.max_iters) base.max_iters = o.max_iters;
  if (o.grad_tol) base.grad_tol = o.grad_tol;
  if (o.memory) base.memory = o.memory;
  if (o.figure) base.figure = o.figure;
  if (out_set) base.out = o.out;
  if (svg_set) base.svg = o.svg;
}

ProblemPreset problem_preset(const std::string& name) {
  if (name == "problem1") return {"half-square", {0.0, 1.0}, InitPolicy::Linear};
  if (name == "quad-mass") return {"quad-mass", {0.0, 1.0}, InitPolicy::Linear};
  if (name == "bolza") return {"two-well", {0.0, 0.0}, InitPolicy::Zero};
  if (name == "bolza-bare") return {"two-well-bare", {0.0, 0.0}, InitPolicy::Zero};
  throw SpecError("unknown problem '" + name + "'");
}

std::string resolved_integrand(const ExperimentSpec& spec) {
  if (spec.integrand) return *spec.integrand;
  if (spec.problem) return problem_preset(*spec.problem).integrand;
  return "half-square";
}

BoundaryConditions resolved_bc(const ExperimentSpec& spec) {
  if (spec.bc) return *spec.bc;
  if (spec.problem) return problem_preset(*spec.problem).bc;
  return {0.0, 1.0};
}

int resolved_n(const ExperimentSpec& spec, int fallback) {
  const int n = spec.n.value_or(fallback);
  if (n < 2) throw SpecError("n must be at least 2");
  return n;
}

SolverConfig resolved_solver_config(const ExperimentSpec& spec, int n) {
  SolverConfig cfg = default_solver_config(n);
  if (spec.max_iters) cfg.max_iters = *spec.max_iters;
  if (spec.grad_tol) cfg.grad_tol = *spec.grad_tol;
  if (spec.memory) cfg.memory = *spec.memory;
  if (spec.seed) cfg.seed = *spec.seed;
  try {
    cfg.validate();
  } catch (const ParameterError& e) {
    throw SpecError(e.what());
  }
  return cfg;
}

InitPolicy parse_init_policy(const std::string& name) {
  if (name == "linear") return InitPolicy::Linear;
  if (name == "zero") return InitPolicy::Zero;
  if (name == "random") return InitPolicy::Random;
  if (name == "hat") return InitPolicy::Hat;
  throw SpecError("unknown init policy '" + name + "'");
}

}  // namespace nlvar::cli
