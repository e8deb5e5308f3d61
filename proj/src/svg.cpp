#include "crsense/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace crsense::cli {

namespace {

constexpr int kWidth = 860, kHeight = 520;
constexpr int kLeft = 70, kRight = 160, kTop = 40, kBottom = 55;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string fmt2(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

void write_line_plot(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     std::span<const SvgSeries> series) {
    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    if (!(x_min <= x_max)) {  // nothing to draw
        x_min = 0;
        x_max = 1;
        y_min = 0;
        y_max = 1;
    }
    if (x_max == x_min) x_max = x_min + 1;
    if (y_max == y_min) y_max = y_min + 1;
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    const auto py = [&](double y) { return kTop + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h; };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open svg output: " + path);

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // frame and ticks
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
        << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double fx = x_min + (x_max - x_min) * i / 5.0;
        const double fy = y_min + (y_max - y_min) * i / 5.0;
        out << "<line x1=\"" << fmt2(px(fx)) << "\" y1=\"" << kTop + plot_h << "\" x2=\""
            << fmt2(px(fx)) << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt2(px(fx)) << "\" y=\"" << kTop + plot_h + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(fx)
            << "</text>\n";
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt2(py(fy)) << "\" x2=\"" << kLeft
            << "\" y2=\"" << fmt2(py(fy)) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << kLeft - 9 << "\" y=\"" << fmt2(py(fy) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(fy)
            << "</text>\n";
    }
    out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n";
    out << "<text x=\"18\" y=\"" << kTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << kTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

    // series
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
        for (const auto& [x, y] : series[s].points)
            out << fmt2(px(x)) << "," << fmt2(py(y)) << " ";
        out << "\"/>\n";
        const double ly = kTop + 18.0 * (s + 1);
        out << "<line x1=\"" << kLeft + plot_w + 12 << "\" y1=\"" << ly << "\" x2=\""
            << kLeft + plot_w + 34 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"1.6\"/>\n";
        out << "<text x=\"" << kLeft + plot_w + 40 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[s].label << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace crsense::cli
