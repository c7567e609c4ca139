#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fsum::cli {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool dashed = false;
};

/// Standalone SVG with log-scaled axes, decade ticks, one polyline per series
/// and a legend. Points with a nonpositive coordinate are dropped.
std::string loglog_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                       std::span<const PlotSeries> series);

}  // namespace fsum::cli
