// Minimal SVG line charts for simulation and sweep outputs. Plotting is a
// convenience layer; the CSV artifacts carry the bit-exact data.
#pragma once

#include <string>
#include <vector>

namespace ratesim {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::vector<Series>& series);

}  // namespace ratesim
