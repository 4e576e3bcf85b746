#pragma once

#include <string>
#include <vector>

namespace normlab {

// A single data series: points plus a display name.
struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    bool line = true;    // polyline through the points
    bool marks = true;   // circles at the points
};

// Minimal deterministic SVG line/scatter plot: fixed canvas, linear axes
// with tick labels, one color per series, no timestamps or randomness.
std::string render_svg_plot(const std::string& title, const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<PlotSeries>& series, bool log_y = false);

}  // namespace normlab
