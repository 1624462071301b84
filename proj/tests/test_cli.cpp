#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlvar/energy.hpp"
#include "nlvar_cli/commands.hpp"
#include "nlvar_cli/curve_io.hpp"
#include "nlvar_cli/experiment.hpp"
#include "nlvar_cli/svg.hpp"

using namespace nlvar;
using namespace nlvar::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run nlvar_run(std::vector<std::string> args) {
  args.insert(args.begin(), "nlvar");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("nlvar_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

double field(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + ": ");
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + key.size() + 2));
}

}  // namespace

TEST_CASE("config parsing") {
  const ExperimentSpec s = parse_config(
      "# comment\n"
      "problem = quad-mass\n"
      "n = 32   # trailing comment\n"
      "bc = 0, 2\n"
      "seed=7\n"
      "formats = csv,svg\n");
  CHECK(*s.problem == "quad-mass");
  CHECK(*s.n == 32);
  CHECK(s.bc->right == 2.0);
  CHECK(*s.seed == 7u);
  CHECK(s.svg);
  CHECK(resolved_integrand(s) == "quad-mass");
  CHECK_THROWS_AS(parse_config("colour = red\n"), SpecError);
  CHECK_THROWS_AS(parse_config("n = many\n"), SpecError);
  CHECK_THROWS_AS(parse_config("just words\n"), SpecError);
  CHECK_THROWS_AS(parse_config("problem = problem9\n"), SpecError);
  CHECK_THROWS_AS(parse_config("formats = pdf\n"), SpecError);
  CHECK_THROWS_AS(parse_bc("1;2"), SpecError);
}

TEST_CASE("curve files") {
  const NodalFunction u = sample(Grid1D(8), [](double x) { return std::exp(x) / 3.0; });
  const std::string text = format_curve(u.grid().nodes(), u.values());
  CHECK(text.rfind("x,u\n0,", 0) == 0);
  const NodalFunction back = parse_curve(text);
  CHECK(std::vector<double>(back.values().begin(), back.values().end()) ==
        std::vector<double>(u.values().begin(), u.values().end()));
  CHECK(*back.right_bc() == u.value(8));
  CHECK_THROWS_AS(parse_curve("t,u\n0,0\n0.5,1\n1,2\n"), SpecError);
  CHECK_THROWS_AS(parse_curve("x,u\n0,0\n0.4,1\n1,2\n"), SpecError);
  CHECK_THROWS_AS(parse_curve("x,u\n0,0\n1,2\n"), SpecError);
  const std::vector<double> bad_x{0.0, 0.7, 0.5, 1.0};
  const std::vector<double> y{0, 0, 0, 0};
  CHECK_THROWS_AS(format_curve(bad_x, y), SpecError);
}

TEST_CASE("svg output is plain text with one polyline per series") {
  const std::string svg = render_svg("t<1>", {{"a", {0, 0.5, 1}, {0, 1, 0}}, {"b", {0, 1}, {1, 1}}});
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("t&lt;1&gt;") != std::string::npos);
  std::size_t count = 0;
  for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++count;
  CHECK(count == 2);
}

TEST_CASE("energy subcommand") {
  Run r = nlvar_run({"energy", "--integrand", "half-square", "--u", "linear", "--n", "64"});
  CHECK(r.code == kSuccess);
  CHECK(field(r.out, "energy") == doctest::Approx(0.5).epsilon(1e-14));
  r = nlvar_run({"energy", "--integrand", "two-well-bare", "--u", "zero", "--n", "64"});
  CHECK(r.code == kSuccess);
  CHECK(field(r.out, "energy") == doctest::Approx(0.25).epsilon(1e-14));
  r = nlvar_run({"energy", "--integrand", "cubic", "--u", "linear"});
  CHECK(r.code == kSpecError);
  CHECK(r.err.find("unknown integrand") != std::string::npos);
  CHECK(nlvar_run({"energy", "--n", "1"}).code == kSpecError);
  CHECK(nlvar_run({"energy", "--u", "/no/such/file.csv"}).code == kSpecError);
  CHECK(nlvar_run({"energy", "--bogus"}).code == kSpecError);
  CHECK(nlvar_run({}).code == kSpecError);
}

TEST_CASE("numeric failures map to exit code 3") {
  const fs::path dir = scratch("nonfinite");
  // Slope 1e100 overflows |U|^4.
  std::ofstream(dir / "steep.csv") << "x,u\n0,0\n0.5,1e100\n1,0\n";
  const Run r = nlvar_run({"energy", "--integrand", "power:4", "--u", (dir / "steep.csv").string()});
  CHECK(r.code == kNumericError);
}

TEST_CASE("minimize writes a curve that round-trips through energy") {
  const fs::path dir = scratch("minimize");
  const Run m = nlvar_run({"minimize", "--problem", "problem1", "--n", "64", "--out", dir.string(), "--svg"});
  REQUIRE(m.code == kSuccess);
  const fs::path curve = dir / "problem1_n64.csv";
  REQUIRE(fs::exists(curve));
  CHECK(fs::exists(dir / "problem1_n64.svg"));
  const NodalFunction u = read_curve(curve);
  CHECK(u.value(0) == 0.0);
  CHECK(u.value(64) == 1.0);
  const double reported = field(m.out, "energy");
  const Run e = nlvar_run({"energy", "--integrand", "half-square", "--u", curve.string()});
  REQUIRE(e.code == kSuccess);
  CHECK(std::abs(field(e.out, "energy") - reported) <= 1e-12 * reported);
  CHECK(field(m.out, "energy") < 0.5);
}

TEST_CASE("minimize variants") {
  const fs::path dir = scratch("variants");
  Run r = nlvar_run({"minimize", "--problem", "quad-mass", "--n", "32", "--out", dir.string()});
  CHECK(r.code == kSuccess);
  CHECK(fs::exists(dir / "quad-mass_n32.csv"));
  CHECK(fs::exists(dir / "local_exp_n32.csv"));
  r = nlvar_run({"minimize", "--problem", "bolza-bare", "--n", "32", "--out", dir.string()});
  CHECK(r.code == kSuccess);
  CHECK(r.err.find("non-convex") != std::string::npos);
  r = nlvar_run({"minimize", "--problem", "problem1", "--n", "32", "--max-iters", "2",
                 "--out", dir.string()});
  CHECK(r.code == kNotConverged);
  r = nlvar_run({"minimize", "--problem", "problem1", "--grad-tol", "-1", "--out", dir.string()});
  CHECK(r.code == kSpecError);
  r = nlvar_run({"minimize", "--integrand", "two-well", "--bc", "0,0", "--init", "random",
                 "--seed", "3", "--n", "16", "--out", dir.string()});
  CHECK(r.code == kSuccess);
}

TEST_CASE("config file drives the run and flags override it") {
  const fs::path dir = scratch("config");
  std::ofstream(dir / "exp.cfg") << "problem = problem1\nn = 16\nout = " << dir.string() << "\n";
  Run r = nlvar_run({"minimize", "--config", (dir / "exp.cfg").string()});
  CHECK(r.code == kSuccess);
  CHECK(fs::exists(dir / "problem1_n16.csv"));
  r = nlvar_run({"minimize", "--config", (dir / "exp.cfg").string(), "--n", "8"});
  CHECK(r.code == kSuccess);
  CHECK(fs::exists(dir / "problem1_n8.csv"));
  std::ofstream(dir / "bad.cfg") << "problem = problem1\nwidth = 3\n";
  CHECK(nlvar_run({"minimize", "--config", (dir / "bad.cfg").string()}).code == kSpecError);
  CHECK(nlvar_run({"minimize", "--config", (dir / "missing.cfg").string()}).code == kSpecError);
}

TEST_CASE("residual subcommand") {
  Run r = nlvar_run({"residual", "--integrand", "half-square", "--u", "linear", "--n", "128"});
  REQUIRE(r.code == kSuccess);
  CHECK(r.out.rfind("x,residual\n", 0) == 0);
  CHECK(field(r.out, "norm_sup") >= 2 * std::log(3.0) - 0.05);
  r = nlvar_run({"residual", "--integrand", "two-well", "--u", "zero", "--n", "64"});
  REQUIRE(r.code == kSuccess);
  CHECK(field(r.out, "norm_l2") <= 1e-10);
  CHECK(field(r.out, "norm_sup") <= 1e-10);
  r = nlvar_run({"residual", "--problem", "problem1", "--u", "minimize", "--n", "32"});
  CHECK(r.code == kSuccess);
}

TEST_CASE("reproduce subcommand") {
  const fs::path dir = scratch("reproduce");
  CHECK(nlvar_run({"reproduce", "fig9", "--out", dir.string()}).code == kSpecError);
  CHECK(nlvar_run({"reproduce", "--out", dir.string()}).code == kSpecError);

  Run r = nlvar_run({"reproduce", "fig1-ode-approx", "--out", dir.string(), "--svg"});
  REQUIRE(r.code == kSuccess);
  const NodalFunction k_norm = read_curve(dir / "fig1_derivative_k_normalized.csv");
  const NodalFunction k_two = read_curve(dir / "fig1_derivative_k2.csv");
  CHECK(k_norm.grid().node_count() == 512);
  CHECK(k_two.value(0) == 2.0);
  CHECK(fs::exists(dir / "fig1_ode_approx.svg"));

  r = nlvar_run({"reproduce", "fig3-quad-mass", "--n", "32", "--out", dir.string()});
  REQUIRE(r.code == kSuccess);
  CHECK(fs::exists(dir / "fig3_minimizer.csv"));
  CHECK(fs::exists(dir / "fig3_local_exp.csv"));
  CHECK(r.out.find("sup_distance_to_local") != std::string::npos);

  r = nlvar_run({"reproduce", "fig4-bolza", "--n", "16", "--out", dir.string()});
  REQUIRE(r.code == kSuccess);
  CHECK(fs::exists(dir / "fig4_n16.csv"));
  CHECK(fs::exists(dir / "fig4_n32.csv"));
  CHECK(r.out.find("sup_distance") != std::string::npos);
}

TEST_CASE("reproduce is byte-identical across runs") {
  const fs::path a = scratch("idem_a");
  const fs::path b = scratch("idem_b");
  REQUIRE(nlvar_run({"reproduce", "fig2-problem1", "--n", "32", "--out", a.string()}).code == kSuccess);
  REQUIRE(nlvar_run({"reproduce", "fig2-problem1", "--n", "32", "--out", b.string()}).code == kSuccess);
  for (const char* f : {"fig2_minimizer.csv", "fig2_derivative.csv", "fig2_ode_approx.csv"}) {
    CHECK(slurp(a / f) == slurp(b / f));
    CHECK(!slurp(a / f).empty());
  }
}

#ifdef NLVAR_EXECUTABLE
TEST_CASE("process exit codes") {
  const std::string exe = NLVAR_EXECUTABLE;
  const auto code = [&](const std::string& args) {
    const int status = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  CHECK(code("energy --integrand half-square --u linear --n 16") == 0);
  CHECK(code("energy --integrand nope") == 2);
  CHECK(code("minimize --problem problem1 --n 16 --max-iters 1 --out " +
             scratch("proc").string()) == 4);
}
#endif
