#include "nlvar_cli/curve_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "nlvar_cli/experiment.hpp"

namespace nlvar::cli {

namespace {

double parse_field(const std::string& text, int row) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw SpecError("curve row " + std::to_string(row) + ": bad number '" + text + "'");
  }
  return value;
}

}  // namespace

std::string format_curve(std::span<const double> x, std::span<const double> u) {
  if (x.size() != u.size() || x.size() < 2) {
    throw SpecError("curve needs matching x and u columns with >= 2 rows");
  }
  if (x.front() != 0.0 || x.back() != 1.0) {
    throw SpecError("curve x column must run from 0 to 1");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw SpecError("curve x column must be strictly increasing");
  }
  std::string text = "x,u\n";
  char buf[64];
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int len = std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x[i], u[i]);
    text.append(buf, static_cast<std::size_t>(len));
  }
  return text;
}

void write_curve(const std::filesystem::path& path, std::span<const double> x,
                 std::span<const double> u) {
  const std::string text = format_curve(x, u);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SpecError("cannot write " + path.string());
  out << text;
}

void write_curve(const std::filesystem::path& path, const NodalFunction& u) {
  const std::vector<double> x = u.grid().nodes();
  write_curve(path, x, u.values());
}

NodalFunction parse_curve(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || (line != "x,u" && line != "x,u\r")) {
    throw SpecError("curve file must start with the header 'x,u'");
  }
  std::vector<double> xs;
  std::vector<double> us;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw SpecError("curve row " + std::to_string(row) + ": expected 'x,u'");
    }
    xs.push_back(parse_field(line.substr(0, comma), row));
    us.push_back(parse_field(line.substr(comma + 1), row));
  }
  if (xs.size() < 3) throw SpecError("curve needs at least 3 rows");
  const int n = static_cast<int>(xs.size()) - 1;
  const Grid1D grid(n);
  for (int i = 0; i <= n; ++i) {
    if (std::abs(xs[static_cast<std::size_t>(i)] - grid.node(i)) > 1e-12) {
      throw SpecError("curve abscissae are not the uniform nodes i/" + std::to_string(n));
    }
  }
  const double left = us.front();
  const double right = us.back();
  return NodalFunction(grid, std::move(us), left, right);
}

NodalFunction read_curve(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot read curve file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_curve(text.str());
}

}  // namespace nlvar::cli
