#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "nlvar/grid.hpp"

namespace nlvar::cli {

/// Writes "x,u" followed by one row per sample, 17 significant digits.
/// Throws SpecError when x is not strictly increasing from 0 to 1.
void write_curve(const std::filesystem::path& path, std::span<const double> x,
                 std::span<const double> u);
void write_curve(const std::filesystem::path& path, const NodalFunction& u);

/// Formats a curve exactly as write_curve stores it.
std::string format_curve(std::span<const double> x, std::span<const double> u);

/// Reads a curve written on uniform nodes i/n. The end values become pinned
/// end conditions. Throws SpecError for malformed files.
NodalFunction read_curve(const std::filesystem::path& path);
NodalFunction parse_curve(const std::string& text);

}  // namespace nlvar::cli
