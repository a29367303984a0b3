#pragma once

#include <string>
#include <vector>

namespace kleingate::cli {

/// Fixed five-stop ramp (#440154, #3b528b, #21918c, #5ec962, #fde725) with
/// linear RGB interpolation; t is clamped to [0, 1].
std::string ramp_color(double t);

struct HeatmapSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> xs;  // columns
  std::vector<double> ys;  // rows
  /// Row-major values, values[iy * xs.size() + ix].
  std::vector<double> values;
};

/// Self-contained SVG heatmap with inline styles and a color bar.
std::string render_heatmap(const HeatmapSpec& spec);

struct LineSeries {
  std::string label;
  std::string color;
  std::vector<double> ys;
};

struct LinePlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> xs;
  std::vector<LineSeries> series;
};

std::string render_line_plot(const LinePlotSpec& spec);

}  // namespace kleingate::cli
