#include "normlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace normlab {

namespace {

const char* kColors[] = {"#1b6ca8", "#c0392b", "#27ae60", "#8e44ad",
                         "#d35400", "#16a085", "#7f8c8d", "#2c3e50"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string render_svg_plot(const std::string& title, const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<PlotSeries>& series, bool log_y) {
    if (series.empty()) throw std::invalid_argument("render_svg_plot: no series");

    const double width = 640, height = 480;
    const double ml = 70, mr = 20, mt = 40, mb = 50;  // margins
    const double pw = width - ml - mr, ph = height - mt - mb;

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw std::invalid_argument("render_svg_plot: series length mismatch");
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            const double yv = log_y ? std::log10(std::max(s.y[k], 1e-300)) : s.y[k];
            if (first) {
                xmin = xmax = s.x[k];
                ymin = ymax = yv;
                first = false;
            } else {
                xmin = std::min(xmin, s.x[k]);
                xmax = std::max(xmax, s.x[k]);
                ymin = std::min(ymin, yv);
                ymax = std::max(ymax, yv);
            }
        }
    }
    if (first) throw std::invalid_argument("render_svg_plot: all series empty");
    if (xmax == xmin) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax == ymin) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) {
        const double yv = log_y ? std::log10(std::max(y, 1e-300)) : y;
        return mt + ph - (yv - ymin) / (ymax - ymin) * ph;
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"14\">" + title + "</text>\n";

    // axes
    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(ml) + "\" y2=\"" +
           num(mt + ph) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt + ph) + "\" x2=\"" + num(ml + pw) +
           "\" y2=\"" + num(mt + ph) + "\" stroke=\"black\"/>\n";

    // 5 ticks per axis
    for (int k = 0; k <= 4; ++k) {
        const double fx = xmin + (xmax - xmin) * k / 4.0;
        const double gx = px(fx);
        svg += "<line x1=\"" + num(gx) + "\" y1=\"" + num(mt + ph) + "\" x2=\"" + num(gx) +
               "\" y2=\"" + num(mt + ph + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(gx) + "\" y=\"" + num(mt + ph + 18) +
               "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"10\">" + num(fx) +
               "</text>\n";
        const double fy = ymin + (ymax - ymin) * k / 4.0;
        const double gy = mt + ph - ph * k / 4.0;
        const double label = log_y ? std::pow(10.0, fy) : fy;
        svg += "<line x1=\"" + num(ml - 5) + "\" y1=\"" + num(gy) + "\" x2=\"" + num(ml) +
               "\" y2=\"" + num(gy) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(ml - 8) + "\" y=\"" + num(gy + 3) +
               "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">" + num(label) +
               "</text>\n";
    }
    svg += "<text x=\"" + num(ml + pw / 2) + "\" y=\"" + num(height - 10) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">" + x_label +
           "</text>\n";
    svg += "<text x=\"16\" y=\"" + num(mt + ph / 2) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " + num(mt + ph / 2) + ")\">" + y_label + "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kColors[si % (sizeof(kColors) / sizeof(kColors[0]))];
        if (s.line && s.x.size() > 1) {
            std::string pts;
            for (std::size_t k = 0; k < s.x.size(); ++k) {
                if (k) pts += ' ';
                pts += num(px(s.x[k])) + "," + num(py(s.y[k]));
            }
            svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                   "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        }
        if (s.marks) {
            for (std::size_t k = 0; k < s.x.size(); ++k) {
                svg += "<circle cx=\"" + num(px(s.x[k])) + "\" cy=\"" + num(py(s.y[k])) +
                       "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
            }
        }
        svg += "<text x=\"" + num(ml + pw - 6) + "\" y=\"" + num(mt + 14 + 14 * static_cast<double>(si)) +
               "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\" fill=\"" + color +
               "\">" + s.name + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace normlab
