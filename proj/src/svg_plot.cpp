#include "kantmfg/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace kantmfg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 620.0;
constexpr double kTop = 46.0;
constexpr double kBottom = 370.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
constexpr int kPaletteSize = 8;

std::string num(double v, const char* fmt = "%.2f") {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), fmt, v);
  return buffer;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range data_range(const std::vector<PlotSeries>& series, bool use_y) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const PlotSeries& s : series) {
    const std::vector<double>& v = use_y ? s.y : s.x;
    for (double value : v) {
      lo = std::min(lo, value);
      hi = std::max(hi, value);
    }
  }
  if (!(lo <= hi)) return {0.0, 1.0};
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  } else if (use_y) {
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  return {lo, hi};
}

}  // namespace

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<PlotSeries>& series) {
  for (const PlotSeries& s : series) {
    if (s.x.size() != s.y.size()) {
      throw std::invalid_argument("render_line_chart: series x/y sizes differ");
    }
  }
  const Range xr = data_range(series, false);
  const Range yr = data_range(series, true);
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * (kRight - kLeft); };
  auto py = [&](double y) { return kBottom - (y - yr.lo) / (yr.hi - yr.lo) * (kBottom - kTop); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth, "%.0f")
      << "\" height=\"" << num(kHeight, "%.0f") << "\" viewBox=\"0 0 " << num(kWidth, "%.0f")
      << ' ' << num(kHeight, "%.0f") << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(0.5 * kWidth) << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << escape(title) << "</text>\n";

  // Axes and ticks.
  svg << "<g stroke=\"#333333\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kBottom) << "\" x2=\"" << num(kRight)
      << "\" y2=\"" << num(kBottom) << "\"/>\n";
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft)
      << "\" y2=\"" << num(kBottom) << "\"/>\n";
  svg << "</g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    svg << "<line x1=\"" << num(px(fx)) << "\" y1=\"" << num(kBottom) << "\" x2=\"" << num(px(fx))
        << "\" y2=\"" << num(kBottom + 5) << "\" stroke=\"#333333\"/>\n";
    svg << "<text x=\"" << num(px(fx)) << "\" y=\"" << num(kBottom + 18)
        << "\" text-anchor=\"middle\">" << num(fx, "%.4g") << "</text>\n";
    svg << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(fy)) << "\" x2=\""
        << num(kLeft) << "\" y2=\"" << num(py(fy)) << "\" stroke=\"#333333\"/>\n";
    svg << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(fy) + 4)
        << "\" text-anchor=\"end\">" << num(fy, "%.4g") << "</text>\n";
  }
  svg << "<text x=\"" << num(0.5 * (kLeft + kRight)) << "\" y=\"" << num(kHeight - 12)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(x_label) << "</text>\n";
  svg << "<text x=\"18\" y=\"" << num(0.5 * (kTop + kBottom))
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << num(0.5 * (kTop + kBottom)) << ")\">" << escape(y_label) << "</text>\n";
  svg << "</g>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kPaletteSize];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      if (i) svg << ' ';
      svg << num(px(series[s].x[i])) << ',' << num(py(series[s].y[i]));
    }
    svg << "\"/>\n";
  }

  svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const double y = kTop + 8.0 + 16.0 * static_cast<double>(s);
    svg << "<line x1=\"" << num(kRight - 150) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(kRight - 126) << "\" y2=\"" << num(y) << "\" stroke=\""
        << kPalette[s % kPaletteSize] << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << num(kRight - 120) << "\" y=\"" << num(y + 4) << "\">"
        << escape(series[s].label) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace kantmfg
