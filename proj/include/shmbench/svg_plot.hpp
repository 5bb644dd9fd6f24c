#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace shmbench {

/// Minimal SVG line-plot writer for the CLI's figure outputs. One panel,
/// autoscaled axes, a handful of series.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label, int width = 960,
            int height = 420)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)),
          width_(width), height_(height) {}

    void add_series(std::vector<double> x, std::vector<double> y, std::string color,
                    std::string name = {}) {
        if (x.size() != y.size()) throw std::invalid_argument("SvgPlot: x/y length mismatch");
        series_.push_back(Series{std::move(x), std::move(y), std::move(color), std::move(name)});
    }

    /// y values spaced 1 apart on x.
    void add_series_indexed(const std::vector<double>& y, std::string color, std::string name = {}) {
        std::vector<double> x(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) x[i] = static_cast<double>(i);
        add_series(std::move(x), std::vector<double>(y), std::move(color), std::move(name));
    }

    std::string render() const {
        double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
        for (const Series& s : series_) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
                x_min = std::min(x_min, s.x[i]);
                x_max = std::max(x_max, s.x[i]);
                y_min = std::min(y_min, s.y[i]);
                y_max = std::max(y_max, s.y[i]);
            }
        }
        if (x_min > x_max) { x_min = 0.0; x_max = 1.0; }
        if (y_min > y_max) { y_min = 0.0; y_max = 1.0; }
        if (x_max == x_min) x_max = x_min + 1.0;
        if (y_max == y_min) { y_max += 0.5; y_min -= 0.5; }
        const double y_pad = 0.05 * (y_max - y_min);
        y_min -= y_pad;
        y_max += y_pad;

        const double ml = 72, mr = 18, mt = 34, mb = 46;  // margins
        const double pw = width_ - ml - mr;
        const double ph = height_ - mt - mb;
        const auto px = [&](double x) { return ml + pw * (x - x_min) / (x_max - x_min); };
        const auto py = [&](double y) { return mt + ph * (1.0 - (y - y_min) / (y_max - y_min)); };

        std::string svg;
        svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width_) +
               "\" height=\"" + std::to_string(height_) + "\" font-family=\"sans-serif\">\n";
        svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        svg += "<text x=\"" + fmt(width_ / 2.0) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" +
               escape(title_) + "</text>\n";

        // frame + ticks
        svg += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" + fmt(pw) +
               "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"#333\"/>\n";
        for (int t = 0; t <= 5; ++t) {
            const double fx = x_min + (x_max - x_min) * t / 5.0;
            const double fy = y_min + (y_max - y_min) * t / 5.0;
            svg += "<line x1=\"" + fmt(px(fx)) + "\" y1=\"" + fmt(mt + ph) + "\" x2=\"" + fmt(px(fx)) +
                   "\" y2=\"" + fmt(mt + ph + 5) + "\" stroke=\"#333\"/>\n";
            svg += "<text x=\"" + fmt(px(fx)) + "\" y=\"" + fmt(mt + ph + 18) +
                   "\" text-anchor=\"middle\" font-size=\"11\">" + fmt_tick(fx) + "</text>\n";
            svg += "<line x1=\"" + fmt(ml - 5) + "\" y1=\"" + fmt(py(fy)) + "\" x2=\"" + fmt(ml) +
                   "\" y2=\"" + fmt(py(fy)) + "\" stroke=\"#333\"/>\n";
            svg += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(py(fy) + 4) +
                   "\" text-anchor=\"end\" font-size=\"11\">" + fmt_tick(fy) + "</text>\n";
        }
        svg += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(height_ - 8) +
               "\" text-anchor=\"middle\" font-size=\"12\">" + escape(x_label_) + "</text>\n";
        svg += "<text x=\"14\" y=\"" + fmt(mt + ph / 2) +
               "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 " +
               fmt(mt + ph / 2) + ")\">" + escape(y_label_) + "</text>\n";

        double legend_y = mt + 14;
        for (const Series& s : series_) {
            std::string pts;
            bool pen_up = true;
            // cap emitted points; line plots do not need more than ~4k
            const std::size_t stride = std::max<std::size_t>(1, s.x.size() / 4000);
            for (std::size_t i = 0; i < s.x.size(); i += stride) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                    if (!pts.empty()) {
                        svg += polyline(pts, s.color);
                        pts.clear();
                    }
                    pen_up = true;
                    continue;
                }
                pts += (pen_up && pts.empty() ? "" : " ") + fmt(px(s.x[i])) + "," + fmt(py(s.y[i]));
                pen_up = false;
            }
            if (!pts.empty()) svg += polyline(pts, s.color);
            if (!s.name.empty()) {
                svg += "<line x1=\"" + fmt(ml + 10) + "\" y1=\"" + fmt(legend_y - 4) + "\" x2=\"" +
                       fmt(ml + 34) + "\" y2=\"" + fmt(legend_y - 4) + "\" stroke=\"" + s.color +
                       "\" stroke-width=\"2\"/>\n";
                svg += "<text x=\"" + fmt(ml + 40) + "\" y=\"" + fmt(legend_y) +
                       "\" font-size=\"11\">" + escape(s.name) + "</text>\n";
                legend_y += 16;
            }
        }
        svg += "</svg>\n";
        return svg;
    }

    void write(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("SvgPlot: cannot open " + path);
        out << render();
    }

private:
    struct Series {
        std::vector<double> x, y;
        std::string color;
        std::string name;
    };

    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.1f", v);
        return buf;
    }
    static std::string fmt_tick(double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4g", v);
        return buf;
    }
    static std::string escape(const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '<') out += "&lt;";
            else if (c == '>') out += "&gt;";
            else if (c == '&') out += "&amp;";
            else out += c;
        }
        return out;
    }
    static std::string polyline(const std::string& pts, const std::string& color) {
        return "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1\"/>\n";
    }

    std::string title_, x_label_, y_label_;
    int width_, height_;
    std::vector<Series> series_;
};

/// Stacks pre-rendered SVG panels vertically into one figure file.
inline void write_svg_panels(const std::vector<std::string>& panels, int panel_width,
                             int panel_height, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_svg_panels: cannot open " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << panel_width << "\" height=\""
        << panel_height * static_cast<int>(panels.size()) << "\">\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        out << "<g transform=\"translate(0," << panel_height * static_cast<int>(i) << ")\">\n";
        out << panels[i];
        out << "</g>\n";
    }
    out << "</svg>\n";
}

}  // namespace shmbench
