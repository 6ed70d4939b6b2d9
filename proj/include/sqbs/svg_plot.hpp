#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace sqbs {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal static line plot. No interactivity, no dependencies; just enough
/// to eyeball a sweep result next to its CSV.
void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series);

}  // namespace sqbs
