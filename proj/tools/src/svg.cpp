#include "nlvar_cli/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "nlvar_cli/experiment.hpp"

namespace nlvar::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(const char* pattern, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const std::string& title, const std::vector<PlotSeries>& series) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const PlotSeries& s : series) {
    for (double v : s.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
    for (double v : s.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
  }
  if (!(xmax > xmin)) { xmin = 0.0; xmax = 1.0; }
  if (!(ymax > ymin)) { ymin -= 0.5; ymax += 0.5; }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" "
         "height=\"480\" viewBox=\"0 0 640 480\">\n";
  svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + escape(title) + "</text>\n";
  svg += "<rect x=\"" + fmt("%.2f", kLeft) + "\" y=\"" + fmt("%.2f", kTop) +
         "\" width=\"" + fmt("%.2f", pw) + "\" height=\"" + fmt("%.2f", ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

  constexpr int ticks = 5;
  for (int t = 0; t <= ticks; ++t) {
    const double xv = xmin + (xmax - xmin) * t / ticks;
    const double yv = ymin + (ymax - ymin) * t / ticks;
    const std::string X = fmt("%.2f", px(xv));
    const std::string Y = fmt("%.2f", py(yv));
    const std::string bottom = fmt("%.2f", kTop + ph);
    svg += "<line x1=\"" + X + "\" y1=\"" + bottom + "\" x2=\"" + X + "\" y2=\"" +
           fmt("%.2f", kTop + ph + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + X + "\" y=\"" + fmt("%.2f", kTop + ph + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           fmt("%.3g", xv) + "</text>\n";
    svg += "<line x1=\"" + fmt("%.2f", kLeft - 5) + "\" y1=\"" + Y + "\" x2=\"" +
           fmt("%.2f", kLeft) + "\" y2=\"" + Y + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", kLeft - 8) + "\" y=\"" + Y +
           "\" text-anchor=\"end\" dominant-baseline=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">" + fmt("%.3g", yv) + "</text>\n";
  }

  for (std::size_t k = 0; k < series.size(); ++k) {
    const PlotSeries& s = series[k];
    const char* color = kColors[k % kColors.size()];
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (i) svg += ' ';
      svg += fmt("%.2f", px(s.x[i])) + "," + fmt("%.2f", py(s.y[i]));
    }
    svg += "\"/>\n";
    const double ly = kTop + 16.0 + 18.0 * static_cast<double>(k);
    svg += "<line x1=\"" + fmt("%.2f", kLeft + 10) + "\" y1=\"" + fmt("%.2f", ly) +
           "\" x2=\"" + fmt("%.2f", kLeft + 34) + "\" y2=\"" + fmt("%.2f", ly) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", kLeft + 40) + "\" y=\"" + fmt("%.2f", ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(s.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_svg(const std::filesystem::path& path, const std::string& title,
               const std::vector<PlotSeries>& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SpecError("cannot write " + path.string());
  out << render_svg(title, series);
}

}  // namespace nlvar::cli
