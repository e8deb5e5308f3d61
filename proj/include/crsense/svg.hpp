#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace crsense::cli {

struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (x, y), drawn in order
};

/// Minimal line chart (axes, ticks, legend). Convenience output only.
void write_line_plot(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     std::span<const SvgSeries> series);

}  // namespace crsense::cli
