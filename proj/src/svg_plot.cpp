#include "sqbs/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace sqbs {
namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 130;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void grow(double v) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  void pad() {
    if (!(hi > lo)) {
      lo -= 1.0;
      hi += 1.0;
    } else {
      const double d = 0.03 * (hi - lo);
      lo -= d;
      hi += d;
    }
  }
};

}  // namespace

void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series) {
  Range xr, yr;
  for (const auto& s : series) {
    for (double v : s.x) xr.grow(v);
    for (double v : s.y) yr.grow(v);
  }
  if (!std::isfinite(xr.lo) || !std::isfinite(yr.lo)) {
    throw std::invalid_argument("write_svg_plot: no finite data");
  }
  xr.pad();
  yr.pad();

  const double pw = kWidth - kMarginLeft - kMarginRight;
  const double ph = kHeight - kMarginTop - kMarginBottom;
  const auto px = [&](double x) {
    return kMarginLeft + pw * (x - xr.lo) / (xr.hi - xr.lo);
  };
  const auto py = [&](double y) {
    return kMarginTop + ph * (1.0 - (y - yr.lo) / (yr.hi - yr.lo));
  };

  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_svg_plot: cannot open " + path.string());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        "font-size=\"15\" font-family=\"sans-serif\">" << title << "</text>\n";

  // axes box and ticks
  os << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
     << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double fx = xr.lo + (xr.hi - xr.lo) * t / 5.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * t / 5.0;
    os << "<line x1=\"" << px(fx) << "\" y1=\"" << kMarginTop + ph << "\" x2=\""
       << px(fx) << "\" y2=\"" << kMarginTop + ph + 5 << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << px(fx) << "\" y=\"" << kMarginTop + ph + 18
       << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
       << fx << "</text>\n"
       << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << py(fy) << "\" x2=\""
       << kMarginLeft << "\" y2=\"" << py(fy) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << py(fy) + 4
       << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">"
       << fy << "</text>\n";
  }
  os << "<text x=\"" << kMarginLeft + pw / 2 << "\" y=\"" << kHeight - 12
     << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">"
     << x_label << "</text>\n"
     << "<text x=\"16\" y=\"" << kMarginTop + ph / 2
     << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
        "transform=\"rotate(-90 16 " << kMarginTop + ph / 2 << ")\">"
     << y_label << "</text>\n";

  for (size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    os << "\"/>\n";
    const double ly = kMarginTop + 16.0 * (si + 1);
    os << "<line x1=\"" << kMarginLeft + pw + 8 << "\" y1=\"" << ly << "\" x2=\""
       << kMarginLeft + pw + 28 << "\" y2=\"" << ly << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << kMarginLeft + pw + 33 << "\" y=\"" << ly + 4
       << "\" font-size=\"11\" font-family=\"sans-serif\">" << s.label
       << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace sqbs
