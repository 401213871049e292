#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace upcap {

// Shortest round-trippable decimal form; identical output for identical
// doubles, which is what keeps rerun CSVs byte-identical.
std::string format_double(double value);

// One plotted curve; y values are clamped to the 1e-300 display floor
// before the log transform.
struct PlotSeries {
    std::string label;
    std::string color;
    bool dashed = false;
    std::vector<double> x;
    std::vector<double> y;
    // Optional per-point interval whiskers (same length as x when present).
    std::vector<double> y_lo;
    std::vector<double> y_hi;
};

// Minimal log-y SVG line chart; emits well-formed standalone XML.
void write_log_plot_svg(std::ostream& out, const std::string& title,
                        const std::string& x_label, const std::vector<PlotSeries>& series);

}  // namespace upcap
