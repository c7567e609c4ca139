#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace fsum::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 200.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
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

struct Axis {
  double lo = 0.0;  // log10 bounds, widened to whole decades
  double hi = 1.0;

  double map(double log_value, double from, double to) const {
    return from + (log_value - lo) / (hi - lo) * (to - from);
  }
};

Axis make_axis(double min_v, double max_v) {
  Axis a;
  if (!(min_v > 0.0) || !std::isfinite(max_v)) return a;
  a.lo = std::floor(std::log10(min_v));
  a.hi = std::ceil(std::log10(max_v));
  if (a.hi <= a.lo) a.hi = a.lo + 1.0;
  return a;
}

}  // namespace

std::string loglog_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                       std::span<const PlotSeries> series) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = 0.0;
  double y_min = std::numeric_limits<double>::infinity();
  double y_max = 0.0;
  std::vector<std::vector<std::pair<double, double>>> kept;
  for (const auto& s : series) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [x, y] : s.points) {
      if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) continue;
      pts.emplace_back(x, y);
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
    kept.push_back(std::move(pts));
  }
  const Axis ax = make_axis(x_min, x_max);
  const Axis ay = make_axis(y_min, y_max);
  const double px0 = kLeft;
  const double px1 = kWidth - kRight;
  const double py0 = kHeight - kBottom;
  const double py1 = kTop;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<title>" << escape(title) << "</title>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
      << "</text>\n";

  // Decade grid and tick labels.
  for (double d = ax.lo; d <= ax.hi + 1e-9; d += 1.0) {
    const double px = ax.map(d, px0, px1);
    out << "<line x1=\"" << num(px) << "\" y1=\"" << num(py0) << "\" x2=\"" << num(px) << "\" y2=\"" << num(py1)
        << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << num(px) << "\" y=\"" << num(py0 + 18) << "\" text-anchor=\"middle\">1e" << num(d)
        << "</text>\n";
  }
  for (double d = ay.lo; d <= ay.hi + 1e-9; d += 1.0) {
    const double py = ay.map(d, py0, py1);
    out << "<line x1=\"" << num(px0) << "\" y1=\"" << num(py) << "\" x2=\"" << num(px1) << "\" y2=\"" << num(py)
        << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << num(px0 - 8) << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">1e" << num(d)
        << "</text>\n";
  }
  out << "<rect x=\"" << num(px0) << "\" y=\"" << num(py1) << "\" width=\"" << num(px1 - px0) << "\" height=\""
      << num(py0 - py1) << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << num((px0 + px1) / 2) << "\" y=\"" << num(kHeight - 15)
      << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  out << "<text x=\"20\" y=\"" << num((py0 + py1) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << num((py0 + py1) / 2) << ")\">" << escape(y_label) << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    if (!kept[i].empty()) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
      if (series[i].dashed) out << " stroke-dasharray=\"6 4\"";
      out << " points=\"";
      for (std::size_t j = 0; j < kept[i].size(); ++j) {
        const double px = ax.map(std::log10(kept[i][j].first), px0, px1);
        const double py = ay.map(std::log10(kept[i][j].second), py0, py1);
        out << (j ? " " : "") << num(px) << "," << num(py);
      }
      out << "\"/>\n";
      for (const auto& [x, y] : kept[i]) {
        out << "<circle cx=\"" << num(ax.map(std::log10(x), px0, px1)) << "\" cy=\""
            << num(ay.map(std::log10(y), py0, py1)) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
      }
    }
    const double ly = kTop + 16.0 * static_cast<double>(i) + 8.0;
    out << "<line x1=\"" << num(px1 + 12) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(px1 + 36) << "\" y2=\""
        << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"";
    if (series[i].dashed) out << " stroke-dasharray=\"6 4\"";
    out << "/>\n";
    out << "<text x=\"" << num(px1 + 42) << "\" y=\"" << num(ly + 4) << "\">" << escape(series[i].label)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace fsum::cli
