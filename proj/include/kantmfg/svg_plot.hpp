#pragma once

#include <string>
#include <vector>

namespace kantmfg {

/// One polyline of a chart.
struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Renders a self-contained SVG line chart (fixed 640x420 canvas, axes, tick
/// labels, legend, fixed color palette).  Output depends only on the inputs,
/// so identical data produces identical bytes.
std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<PlotSeries>& series);

}  // namespace kantmfg
