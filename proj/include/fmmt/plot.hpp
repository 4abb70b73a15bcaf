#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fmmt {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool markers_only = false;  // scatter instead of polyline
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::optional<double> reference_y;  // dashed horizontal line
};

struct BarChart {
  std::string title;
  std::string y_label;
  std::vector<std::string> labels;
  std::vector<double> values;
  std::optional<double> reference_y;
  double y_max = 1.0;
};

// Standalone SVG documents (fixed 640x400 canvas, deterministic output).
std::string render_svg(const LineChart& chart);
std::string render_svg(const BarChart& chart);

// Long-format plot data: series,x,y.
std::string series_csv(const std::vector<Series>& series);

}  // namespace fmmt
