#include "voxal/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace voxal {

namespace {

constexpr int kWidth = 640, kHeight = 440;
constexpr int kLeft = 64, kRight = 24, kTop = 40, kBottom = 48;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf"};

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

}  // namespace

std::string render_line_chart(const SvgChart& chart) {
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool have = false;
    auto widen = [&](double x, double y) {
        if (!have) {
            xmin = xmax = x;
            ymin = ymax = y;
            have = true;
            return;
        }
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    };
    for (const auto& s : chart.series)
        for (const auto& [x, y] : s.points) widen(x, y);
    for (const auto& [y, label] : chart.hlines) widen(have ? xmin : 0.0, y);
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    const double xpad = 0.04 * (xmax - xmin), ypad = 0.08 * (ymax - ymin);
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;

    const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto sy = [&](double y) { return kTop + plot_h - (y - ymin) / (ymax - ymin) * plot_h; };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    out << "  <text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
        << esc(chart.title) << "</text>\n";

    // Axes with 5 ticks each.
    out << "  <g stroke=\"#444\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "    <line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
        << "\" y2=\"" << kTop + plot_h << "\"/>\n";
    out << "    <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kTop + plot_h << "\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 4.0;
        const double fy = ymin + (ymax - ymin) * i / 4.0;
        out << "    <line x1=\"" << px(sx(fx)) << "\" y1=\"" << kTop + plot_h << "\" x2=\""
            << px(sx(fx)) << "\" y2=\"" << kTop + plot_h + 4 << "\"/>\n";
        out << "    <text x=\"" << px(sx(fx)) << "\" y=\"" << kTop + plot_h + 18
            << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#222\">" << px(fx) << "</text>\n";
        out << "    <line x1=\"" << kLeft - 4 << "\" y1=\"" << px(sy(fy)) << "\" x2=\"" << kLeft
            << "\" y2=\"" << px(sy(fy)) << "\"/>\n";
        out << "    <text x=\"" << kLeft - 8 << "\" y=\"" << px(sy(fy) + 4)
            << "\" text-anchor=\"end\" stroke=\"none\" fill=\"#222\">" << px(fy) << "</text>\n";
    }
    out << "  </g>\n";
    out << "  <text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << esc(chart.x_label) << "</text>\n";
    out << "  <text x=\"16\" y=\"" << kTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 "
        << kTop + plot_h / 2 << ")\">" << esc(chart.y_label) << "</text>\n";

    for (const auto& [y, label] : chart.hlines) {
        out << "  <line x1=\"" << kLeft << "\" y1=\"" << px(sy(y)) << "\" x2=\"" << kLeft + plot_w
            << "\" y2=\"" << px(sy(y))
            << "\" stroke=\"#666\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
        out << "  <text x=\"" << kLeft + plot_w - 4 << "\" y=\"" << px(sy(y) - 5)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#666\">"
            << esc(label) << "</text>\n";
    }

    int color = 0;
    for (const auto& s : chart.series) {
        const char* stroke = kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "  <polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            if (i > 0) out << ' ';
            out << px(sx(s.points[i].first)) << ',' << px(sy(s.points[i].second));
        }
        out << "\"/>\n";
        for (const auto& [x, y] : s.points)
            out << "  <circle cx=\"" << px(sx(x)) << "\" cy=\"" << px(sy(y)) << "\" r=\"3\" fill=\""
                << stroke << "\"/>\n";
        out << "  <text x=\"" << kLeft + plot_w - 8 << "\" y=\"" << kTop + 16 + 16 * color
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << stroke
            << "\">" << esc(s.label) << "</text>\n";
        ++color;
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace voxal
