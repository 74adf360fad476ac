#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "isaclim/csv.hpp"
#include "isaclim/errors.hpp"

namespace isaclim {

/// Static vector charts rendered without any external plotting runtime.
/// Every file embeds the run's config hash as an XML comment so a chart can
/// always be traced back to the exact configuration that produced it.
namespace svg {

inline const std::vector<std::string>& palette() {
    static const std::vector<std::string> colors = {
        "#1f6fb4", "#d95f02", "#1b9e77", "#c23b7f", "#6a51a3", "#666666", "#8c6d31", "#17a0b4"};
    return colors;
}

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

namespace detail {

inline std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::vector<double> linear_ticks(double lo, double hi, int target = 6) {
    std::vector<double> ticks;
    if (!(hi > lo)) return {lo};
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * mult >= raw) {
            step = mag * mult;
            break;
        }
    }
    const double first = std::ceil(lo / step) * step;
    for (double t = first; t <= hi + 1e-9 * step; t += step) ticks.push_back(t);
    return ticks;
}

inline std::vector<double> log_ticks(double lo, double hi) {
    std::vector<double> ticks;
    const int e0 = static_cast<int>(std::floor(std::log10(lo) + 1e-12));
    const int e1 = static_cast<int>(std::ceil(std::log10(hi) - 1e-12));
    for (int e = e0; e <= e1; ++e) {
        const double t = std::pow(10.0, e);
        if (t >= lo * (1 - 1e-12) && t <= hi * (1 + 1e-12)) ticks.push_back(t);
    }
    if (ticks.size() < 2) return linear_ticks(lo, hi);
    return ticks;
}

} // namespace detail

class LineChart {
public:
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<Series> series;
    std::string config_note;

    void render(const std::string& path) const {
        const double width = 880, height = 560;
        const double ml = 88, mr = 200, mt = 52, mb = 64;
        const double pw = width - ml - mr, ph = height - mt - mb;

        double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
        double y_lo = x_lo, y_hi = -x_lo;
        for (const auto& s : series) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                const double x = s.x[i], y = s.y[i];
                if (!usable(x, log_x) || !usable(y, log_y)) continue;
                x_lo = std::min(x_lo, x);
                x_hi = std::max(x_hi, x);
                y_lo = std::min(y_lo, y);
                y_hi = std::max(y_hi, y);
            }
        }
        if (!(x_hi >= x_lo) || !(y_hi >= y_lo))
            throw std::runtime_error("LineChart: no finite data to plot");
        if (x_hi == x_lo) { x_hi += 1.0; x_lo -= 1.0; }
        if (y_hi == y_lo) { y_hi = y_hi + std::abs(y_hi) * 0.1 + 1.0; y_lo = y_lo - std::abs(y_lo) * 0.1 - 1.0; }
        if (!log_y) { const double pad = 0.05 * (y_hi - y_lo); y_lo -= pad; y_hi += pad; }

        auto sx = [&](double x) {
            const double t = log_x ? (std::log10(x) - std::log10(x_lo)) / (std::log10(x_hi) - std::log10(x_lo))
                                   : (x - x_lo) / (x_hi - x_lo);
            return ml + t * pw;
        };
        auto sy = [&](double y) {
            const double t = log_y ? (std::log10(y) - std::log10(y_lo)) / (std::log10(y_hi) - std::log10(y_lo))
                                   : (y - y_lo) / (y_hi - y_lo);
            return mt + (1.0 - t) * ph;
        };

        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
            << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
        out << "<!-- " << config_note << " -->\n";
        out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        out << "<text x=\"" << ml << "\" y=\"28\" font-family=\"sans-serif\" font-size=\"17\" "
               "font-weight=\"bold\">" << title << "</text>\n";

        const auto x_ticks = log_x ? detail::log_ticks(x_lo, x_hi) : detail::linear_ticks(x_lo, x_hi);
        const auto y_ticks = log_y ? detail::log_ticks(y_lo, y_hi) : detail::linear_ticks(y_lo, y_hi);
        out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">\n";
        for (double t : x_ticks) {
            const double px = sx(t);
            out << "<line x1=\"" << px << "\" y1=\"" << mt << "\" x2=\"" << px << "\" y2=\""
                << mt + ph << "\" stroke=\"#ddd\"/>\n";
            out << "<text x=\"" << px << "\" y=\"" << mt + ph + 18
                << "\" text-anchor=\"middle\">" << detail::tick_label(t) << "</text>\n";
        }
        for (double t : y_ticks) {
            const double py = sy(t);
            out << "<line x1=\"" << ml << "\" y1=\"" << py << "\" x2=\"" << ml + pw << "\" y2=\""
                << py << "\" stroke=\"#ddd\"/>\n";
            out << "<text x=\"" << ml - 8 << "\" y=\"" << py + 4
                << "\" text-anchor=\"end\">" << detail::tick_label(t) << "</text>\n";
        }
        out << "</g>\n";
        out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
            << "\" fill=\"none\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 16
            << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">" << x_label
            << "</text>\n";
        out << "<text x=\"20\" y=\"" << mt + ph / 2
            << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" "
               "transform=\"rotate(-90 20 " << mt + ph / 2 << ")\">" << y_label << "</text>\n";

        for (std::size_t si = 0; si < series.size(); ++si) {
            const auto& s = series[si];
            const std::string& color = palette()[si % palette().size()];
            std::ostringstream pts;
            bool pen_down = false;
            out << "<path d=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!usable(s.x[i], log_x) || !usable(s.y[i], log_y)) {
                    pen_down = false;
                    continue;
                }
                out << (pen_down ? "L" : "M") << format_number(sx(s.x[i])) << " "
                    << format_number(sy(s.y[i])) << " ";
                pen_down = true;
            }
            out << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
            const double ly = mt + 18 + 20.0 * static_cast<double>(si);
            out << "<line x1=\"" << ml + pw + 12 << "\" y1=\"" << ly - 4 << "\" x2=\""
                << ml + pw + 36 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
                << "\" stroke-width=\"2\"/>\n";
            out << "<text x=\"" << ml + pw + 42 << "\" y=\"" << ly
                << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name << "</text>\n";
        }
        out << "</svg>\n";

        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("LineChart: cannot open " + path);
        f << out.str();
    }

private:
    static bool usable(double v, bool log_scale) {
        return std::isfinite(v) && (!log_scale || v > 0.0);
    }
};

/// Category grid (classification map) over two linear axes.
class GridChart {
public:
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<double> x_values;
    std::vector<double> y_values;
    std::vector<std::vector<int>> cells;  // [yi][xi] category index
    std::vector<std::string> categories;
    std::string config_note;

    void render(const std::string& path) const {
        const double width = 880, height = 560;
        const double ml = 88, mr = 200, mt = 52, mb = 64;
        const double pw = width - ml - mr, ph = height - mt - mb;
        const std::vector<std::string> colors = {"#c7433a", "#e9a53c", "#5ba3cf", "#2d7f4f"};

        check(!x_values.empty() && !y_values.empty(), "GridChart: empty axes");
        const double cw = pw / static_cast<double>(x_values.size());
        const double ch = ph / static_cast<double>(y_values.size());

        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
            << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
        out << "<!-- " << config_note << " -->\n";
        out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        out << "<text x=\"" << ml << "\" y=\"28\" font-family=\"sans-serif\" font-size=\"17\" "
               "font-weight=\"bold\">" << title << "</text>\n";

        for (std::size_t yi = 0; yi < y_values.size(); ++yi) {
            for (std::size_t xi = 0; xi < x_values.size(); ++xi) {
                const int c = cells[yi][xi];
                const double px = ml + cw * static_cast<double>(xi);
                const double py = mt + ph - ch * static_cast<double>(yi + 1);
                out << "<rect x=\"" << format_number(px) << "\" y=\"" << format_number(py)
                    << "\" width=\"" << format_number(cw) << "\" height=\"" << format_number(ch)
                    << "\" fill=\"" << colors[static_cast<std::size_t>(c) % colors.size()]
                    << "\"/>\n";
            }
        }

        out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">\n";
        const std::size_t x_stride = std::max<std::size_t>(1, x_values.size() / 8);
        for (std::size_t xi = 0; xi < x_values.size(); xi += x_stride) {
            const double px = ml + cw * (static_cast<double>(xi) + 0.5);
            out << "<text x=\"" << px << "\" y=\"" << mt + ph + 18
                << "\" text-anchor=\"middle\">" << detail::tick_label(x_values[xi]) << "</text>\n";
        }
        const std::size_t y_stride = std::max<std::size_t>(1, y_values.size() / 8);
        for (std::size_t yi = 0; yi < y_values.size(); yi += y_stride) {
            const double py = mt + ph - ch * (static_cast<double>(yi) + 0.5);
            out << "<text x=\"" << ml - 8 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">"
                << detail::tick_label(y_values[yi]) << "</text>\n";
        }
        out << "</g>\n";
        out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
            << "\" fill=\"none\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 16
            << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">" << x_label
            << "</text>\n";
        out << "<text x=\"20\" y=\"" << mt + ph / 2
            << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" "
               "transform=\"rotate(-90 20 " << mt + ph / 2 << ")\">" << y_label << "</text>\n";
        for (std::size_t ci = 0; ci < categories.size(); ++ci) {
            const double ly = mt + 18 + 22.0 * static_cast<double>(ci);
            out << "<rect x=\"" << ml + pw + 12 << "\" y=\"" << ly - 11
                << "\" width=\"14\" height=\"14\" fill=\"" << colors[ci % colors.size()]
                << "\"/>\n";
            out << "<text x=\"" << ml + pw + 32 << "\" y=\"" << ly
                << "\" font-family=\"sans-serif\" font-size=\"12\">" << categories[ci]
                << "</text>\n";
        }
        out << "</svg>\n";

        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("GridChart: cannot open " + path);
        f << out.str();
    }
};

} // namespace svg
} // namespace isaclim
