#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace nlvar::cli {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Plain SVG 1.1 line plot: frame, ticks, one polyline per series, legend.
std::string render_svg(const std::string& title, const std::vector<PlotSeries>& series);
void write_svg(const std::filesystem::path& path, const std::string& title,
               const std::vector<PlotSeries>& series);

}  // namespace nlvar::cli
