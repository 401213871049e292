#include "upcap/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <ostream>

namespace upcap {

std::string format_double(double value) {
    char buffer[40];
    for (int precision = 1; precision <= 16; ++precision) {
        std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
        if (std::strtod(buffer, nullptr) == value) return buffer;
    }
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

namespace {

constexpr double kFloor = 1e-300;

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void write_log_plot_svg(std::ostream& out, const std::string& title,
                        const std::string& x_label, const std::vector<PlotSeries>& series) {
    const double width = 840, height = 520;
    const double left = 80, right = width - 180, top = 46, bottom = height - 56;

    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double log_min = std::numeric_limits<double>::infinity(), log_max = -log_min;
    auto note = [&](double y) {
        const double value = std::log10(std::max(y, kFloor));
        log_min = std::min(log_min, value);
        log_max = std::max(log_max, value);
    };
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            x_min = std::min(x_min, s.x[i]);
            x_max = std::max(x_max, s.x[i]);
            note(s.y[i]);
            if (i < s.y_lo.size()) note(s.y_lo[i]);
            if (i < s.y_hi.size()) note(s.y_hi[i]);
        }
    }
    if (!(x_min < x_max)) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    log_min = std::floor(log_min) - 0.2;
    log_max = std::ceil(std::max(log_max, log_min + 1.0)) + 0.2;

    auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * (right - left); };
    auto sy = [&](double y) {
        const double value = std::log10(std::max(y, kFloor));
        return bottom - (value - log_min) / (log_max - log_min) * (bottom - top);
    };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << (left + right) / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << escape_xml(title) << "</text>\n";

    // Decade gridlines and y tick labels.
    const int first_decade = static_cast<int>(std::ceil(log_min));
    const int last_decade = static_cast<int>(std::floor(log_max));
    const int decade_step = std::max(1, (last_decade - first_decade) / 10);
    for (int decade = first_decade; decade <= last_decade; decade += decade_step) {
        const double y = bottom - (decade - log_min) / (log_max - log_min) * (bottom - top);
        out << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << right << "\" y2=\"" << y
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << left - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << decade
            << "</text>\n";
    }
    // X ticks.
    for (int tick = 0; tick <= 6; ++tick) {
        const double x = x_min + (x_max - x_min) * tick / 6.0;
        const double px = sx(x);
        out << "<line x1=\"" << px << "\" y1=\"" << bottom << "\" x2=\"" << px << "\" y2=\""
            << bottom + 5 << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << px << "\" y=\"" << bottom + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_double(std::round(x * 1e6) / 1e6) << "</text>\n";
    }
    out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape_xml(x_label) << "</text>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
        << bottom << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    double legend_y = top + 10;
    for (const auto& s : series) {
        if (!s.x.empty()) {
            out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.6\"";
            if (s.dashed) out << " stroke-dasharray=\"6,4\"";
            out << " points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (i) out << ' ';
                out << sx(s.x[i]) << ',' << sy(s.y[i]);
            }
            out << "\"/>\n";
            for (std::size_t i = 0; i < s.x.size() && i < s.y_lo.size() && i < s.y_hi.size(); ++i) {
                const double px = sx(s.x[i]);
                out << "<line x1=\"" << px << "\" y1=\"" << sy(s.y_lo[i]) << "\" x2=\"" << px
                    << "\" y2=\"" << sy(s.y_hi[i]) << "\" stroke=\"" << s.color
                    << "\" stroke-width=\"1\"/>\n";
            }
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                out << "<circle cx=\"" << sx(s.x[i]) << "\" cy=\"" << sy(s.y[i])
                    << "\" r=\"2.2\" fill=\"" << s.color << "\"/>\n";
            }
        }
        out << "<line x1=\"" << right + 12 << "\" y1=\"" << legend_y << "\" x2=\"" << right + 36
            << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color << "\" stroke-width=\"1.6\"";
        if (s.dashed) out << " stroke-dasharray=\"6,4\"";
        out << "/>\n";
        out << "<text x=\"" << right + 42 << "\" y=\"" << legend_y + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(s.label)
            << "</text>\n";
        legend_y += 20;
    }
    out << "</svg>\n";
}

}  // namespace upcap
