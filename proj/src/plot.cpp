#include "fmmt/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace fmmt {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;  // legend column
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo;
  double hi;
};

Range padded(double lo, double hi) {
  if (!(lo < hi)) {
    const double pad = lo == 0.0 ? 1.0 : 0.1 * std::abs(lo);
    return {lo - pad, hi + pad};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

struct Frame {
  Range x;
  Range y;
  double px(double v) const { return kLeft + (v - x.lo) / (x.hi - x.lo) * (kWidth - kLeft - kRight); }
  double py(double v) const { return kHeight - kBottom - (v - y.lo) / (y.hi - y.lo) * (kHeight - kTop - kBottom); }
};

void header(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
     << "</text>\n";
}

void axes(std::ostringstream& os, const Frame& f, const std::string& xl, const std::string& yl, bool x_ticks) {
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y1) << "\" width=\"" << num(x1 - x0) << "\" height=\"" << num(y0 - y1)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = f.y.lo + (f.y.hi - f.y.lo) * i / 4.0;
    os << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(f.py(v) + 4) << "\" text-anchor=\"end\">" << tick(v) << "</text>\n";
    if (x_ticks) {
      const double u = f.x.lo + (f.x.hi - f.x.lo) * i / 4.0;
      os << "<text x=\"" << num(f.px(u)) << "\" y=\"" << num(y0 + 16) << "\" text-anchor=\"middle\">" << tick(u)
         << "</text>\n";
    }
  }
  os << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(kHeight - 12) << "\" text-anchor=\"middle\">" << escape(xl)
     << "</text>\n";
  os << "<text transform=\"translate(16," << num((y0 + y1) / 2) << ") rotate(-90)\" text-anchor=\"middle\">" << escape(yl)
     << "</text>\n";
}

void reference_line(std::ostringstream& os, const Frame& f, double y) {
  if (y < f.y.lo || y > f.y.hi) return;
  os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(f.py(y)) << "\" x2=\"" << num(kWidth - kRight) << "\" y2=\""
     << num(f.py(y)) << "\" stroke=\"gray\" stroke-dasharray=\"5,4\"/>\n";
}

}  // namespace

std::string render_svg(const LineChart& chart) {
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
  for (const Series& s : chart.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i]);
      yhi = std::max(yhi, s.y[i]);
    }
  }
  if (chart.reference_y) {
    ylo = std::min(ylo, *chart.reference_y);
    yhi = std::max(yhi, *chart.reference_y);
  }
  if (!std::isfinite(xlo)) xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
  const Frame f{padded(xlo, xhi), padded(ylo, yhi)};

  std::ostringstream os;
  header(os, chart.title);
  axes(os, f, chart.x_label, chart.y_label, true);
  if (chart.reference_y) reference_line(os, f, *chart.reference_y);
  for (std::size_t k = 0; k < chart.series.size(); ++k) {
    const Series& s = chart.series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    if (s.markers_only) {
      for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        os << "<circle cx=\"" << num(f.px(s.x[i])) << "\" cy=\"" << num(f.py(s.y[i])) << "\" r=\"3\" fill=\"" << color
           << "\"/>\n";
      }
    } else {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        os << num(f.px(s.x[i])) << ',' << num(f.py(s.y[i])) << ' ';
      }
      os << "\"/>\n";
    }
    const double ly = kTop + 10 + 18.0 * static_cast<double>(k);
    os << "<rect x=\"" << num(kWidth - kRight + 12) << "\" y=\"" << num(ly - 8) << "\" width=\"12\" height=\"8\" fill=\""
       << color << "\"/>\n"
       << "<text x=\"" << num(kWidth - kRight + 30) << "\" y=\"" << num(ly) << "\">" << escape(s.name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_svg(const BarChart& chart) {
  const auto count = static_cast<double>(std::max<std::size_t>(chart.values.size(), 1));
  const Frame f{{0.0, count}, {0.0, chart.y_max}};
  std::ostringstream os;
  header(os, chart.title);
  axes(os, f, "", chart.y_label, false);
  if (chart.reference_y) reference_line(os, f, *chart.reference_y);
  for (std::size_t i = 0; i < chart.values.size(); ++i) {
    const double v = std::clamp(std::isfinite(chart.values[i]) ? chart.values[i] : chart.y_max, 0.0, chart.y_max);
    const double left = f.px(static_cast<double>(i) + 0.15);
    const double right = f.px(static_cast<double>(i) + 0.85);
    const double top = f.py(v);
    const bool below = chart.reference_y && chart.values[i] <= *chart.reference_y;
    os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(right - left) << "\" height=\""
       << num(f.py(0.0) - top) << "\" fill=\"" << (below ? "#d62728" : "#1f77b4") << "\"/>\n";
    const std::string label = i < chart.labels.size() ? chart.labels[i] : std::to_string(i + 1);
    os << "<text x=\"" << num((left + right) / 2) << "\" y=\"" << num(f.py(0.0) + 16) << "\" text-anchor=\"middle\">"
       << escape(label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string series_csv(const std::vector<Series>& series) {
  std::ostringstream os;
  os << "series,x,y\n";
  for (const Series& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", s.x[i], s.y[i]);
      os << s.name << ',' << buf << '\n';
    }
  }
  return os.str();
}

}  // namespace fmmt
