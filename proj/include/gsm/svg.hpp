#ifndef GSM_SVG_HPP
#define GSM_SVG_HPP

#include "gsm/matrix.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

namespace gsm::svg {

struct Series {
    std::string label;
    Vector values;
    std::string color = "#1f77b4";
    bool markers = false;  // scatter points on top of the polyline
};

struct PlotOptions {
    std::string title;
    std::string x_label = "vertex";
    std::string y_label = "value";
    int width = 720;
    int height = 360;
};

namespace detail {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

/// Line plot of one or more series against the vertex index, with axes,
/// tick labels and a legend.
inline std::string line_plot(const std::vector<Series>& series, const PlotOptions& opt) {
    const double left = 70, right = 20, top = 40, bottom = 50;
    const double pw = opt.width - left - right, ph = opt.height - top - bottom;
    Index n = 0;
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto& s : series) {
        n = std::max(n, s.values.size());
        if (s.values.size() == 0) continue;
        const double mn = s.values.minCoeff(), mx = s.values.maxCoeff();
        lo = first ? mn : std::min(lo, mn);
        hi = first ? mx : std::max(hi, mx);
        first = false;
    }
    if (hi - lo < 1e-12) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    auto px = [&](double i) { return left + (n > 1 ? i / static_cast<double>(n - 1) : 0.5) * pw; };
    auto py = [&](double v) { return top + (hi - v) / (hi - lo) * ph; };

    using detail::num;
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width) +
                      "\" height=\"" + std::to_string(opt.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(opt.width / 2.0) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
           detail::escape(opt.title) + "</text>\n";
    // axes
    out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(left + pw) + "\" y2=\"" +
           num(top + ph) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" + num(top + ph) +
           "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double v = lo + (hi - lo) * t / 4.0;
        out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(py(v) + 4) + "\" text-anchor=\"end\">" +
               detail::tick(v) + "</text>\n";
        const double i = (n > 1 ? static_cast<double>(n - 1) : 0.0) * t / 4.0;
        out += "<text x=\"" + num(px(i)) + "\" y=\"" + num(top + ph + 16) + "\" text-anchor=\"middle\">" +
               detail::tick(i) + "</text>\n";
    }
    if (lo < 0.0 && hi > 0.0)
        out += "<line x1=\"" + num(left) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(left + pw) + "\" y2=\"" +
               num(py(0)) + "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
    out += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(opt.height - 10.0) + "\" text-anchor=\"middle\">" +
           detail::escape(opt.x_label) + "</text>\n";
    out += "<text x=\"16\" y=\"" + num(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           num(top + ph / 2) + ")\">" + detail::escape(opt.y_label) + "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        std::string pts;
        for (Index i = 0; i < s.values.size(); ++i) {
            if (i) pts += ' ';
            pts += num(px(static_cast<double>(i))) + ',' + num(py(s.values(i)));
        }
        out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        if (s.markers)
            for (Index i = 0; i < s.values.size(); ++i)
                out += "<circle cx=\"" + num(px(static_cast<double>(i))) + "\" cy=\"" + num(py(s.values(i))) +
                       "\" r=\"2.5\" fill=\"" + s.color + "\"/>\n";
        const double ly = top + 8 + 16.0 * static_cast<double>(k);
        out += "<line x1=\"" + num(left + pw - 150) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(left + pw - 130) +
               "\" y2=\"" + num(ly) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + num(left + pw - 125) + "\" y=\"" + num(ly + 4) + "\">" + detail::escape(s.label) +
               "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace gsm::svg

#endif  // GSM_SVG_HPP
