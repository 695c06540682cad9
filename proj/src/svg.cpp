#include "ratesim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ratesim {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 60.0;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::vector<Series>& series) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const Series& s : series) {
        for (double v : s.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
        for (double v : s.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
    }
    if (!std::isfinite(xmin) || xmin == xmax) { xmin -= 0.5; xmax = xmin + 1.0; }
    if (!std::isfinite(ymin) || ymin == ymax) { ymin -= 0.5; ymax = ymin + 1.0; }

    auto px = [&](double x) {
        return kMargin + (x - xmin) / (xmax - xmin) * (kWidth - 2 * kMargin);
    };
    auto py = [&](double y) {
        return kHeight - kMargin - (y - ymin) / (ymax - ymin) * (kHeight - 2 * kMargin);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
        << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // axes
    svg << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
        << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
        << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
        << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << x_label << "</text>\n";
    for (double frac : {0.0, 0.5, 1.0}) {
        double xv = xmin + frac * (xmax - xmin);
        double yv = ymin + frac * (ymax - ymin);
        svg << "<text x=\"" << px(xv) << "\" y=\"" << kHeight - kMargin + 16
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
            << fmt(xv) << "</text>\n"
            << "<text x=\"" << kMargin - 6 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
            << fmt(yv) << "</text>\n";
    }

    for (std::size_t i = 0; i < series.size(); ++i) {
        const Series& s = series[i];
        svg << "<polyline fill=\"none\" stroke=\"" << kColors[i % 4]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
            svg << fmt(px(s.x[k])) << ',' << fmt(py(s.y[k])) << ' ';
        }
        svg << "\"/>\n";
        svg << "<text x=\"" << kWidth - kMargin - 4 << "\" y=\""
            << kMargin + 16 * static_cast<double>(i)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
            << kColors[i % 4] << "\">" << s.label << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace ratesim
