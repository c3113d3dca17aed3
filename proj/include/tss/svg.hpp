#pragma once

#include <span>
#include <string>
#include <vector>

namespace tss::svg {

/// Line plot of one window; the anchor point is marked. `timestamp` is
/// embedded as a comment unless empty (the CLI suppresses it under
/// --deterministic).
std::string window_chart(std::span<const double> values, int anchor_offset,
                         const std::string& title, const std::string& timestamp = "");

struct LogLogSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Log-log line chart, one polyline per series, for scaling plots.
std::string loglog_chart(std::span<const LogLogSeries> series, const std::string& title,
                         const std::string& x_label, const std::string& y_label,
                         const std::string& timestamp = "");

}  // namespace tss::svg
