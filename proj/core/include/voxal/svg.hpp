#pragma once

#include <string>
#include <utility>
#include <vector>

namespace voxal {

struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (x, y), pre-sorted by x
};

struct SvgChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<SvgSeries> series;                       // one polyline each
    std::vector<std::pair<double, std::string>> hlines;  // dashed reference lines
};

// Self-contained well-formed SVG document, deterministic byte for byte.
std::string render_line_chart(const SvgChart& chart);

}  // namespace voxal
