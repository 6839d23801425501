// svg.hpp: self-contained SVG heatmaps and line plots for sweep grids

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "tmsf/errors.hpp"
#include "tmsf/report.hpp"

namespace tmsf::svg {

struct Rgb {
    int r, g, b;
};

// Piecewise-linear approximation of the viridis map on [0, 1].
inline Rgb colormap(double t) {
    static constexpr std::array<Rgb, 9> stops = {{{68, 1, 84}, {71, 44, 122}, {59, 81, 139},
                                                  {44, 113, 142}, {33, 144, 141}, {39, 173, 129},
                                                  {92, 200, 99}, {170, 220, 50}, {253, 231, 37}}};
    if (!std::isfinite(t)) return {200, 200, 200};
    t = std::clamp(t, 0.0, 1.0) * (stops.size() - 1);
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(t), stops.size() - 2);
    const double f = t - static_cast<double>(i);
    auto mix = [&](int a, int b) { return static_cast<int>(std::lround(a + f * (b - a))); };
    return {mix(stops[i].r, stops[i + 1].r), mix(stops[i].g, stops[i + 1].g), mix(stops[i].b, stops[i + 1].b)};
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct PlotLabels {
    std::string title;
    std::string x;
    std::string y;
    std::string value;
};

namespace detail {

inline std::pair<double, double> finite_range(const std::vector<double>& v) {
    double lo = INFINITY, hi = -INFINITY;
    for (double x : v)
        if (std::isfinite(x)) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    if (!std::isfinite(lo)) return {0.0, 1.0};
    return {lo, hi};
}

inline std::string num(double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

} // namespace detail

// values[j * xs.size() + i] is the cell at (xs[i], ys[j]). Non-finite cells are grey.
inline std::string heatmap(const std::vector<double>& xs, const std::vector<double>& ys,
                           const std::vector<double>& values, const PlotLabels& labels) {
    tmsf::detail::require(!xs.empty() && !ys.empty(), "heatmap needs non-empty axes");
    tmsf::detail::require(values.size() == xs.size() * ys.size(), "heatmap value count mismatch");
    const double left = 80, top = 40, w = 480, h = 360, bar_x = left + w + 30, bar_w = 20;
    const auto [vmin, vmax] = detail::finite_range(values);
    const double span = vmax > vmin ? vmax - vmin : 1.0;
    const double cw = w / static_cast<double>(xs.size()), ch = h / static_cast<double>(ys.size());

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"700\" height=\"460\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect width=\"700\" height=\"460\" fill=\"white\"/>\n";
    s << "<text x=\"" << left + w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(labels.title) << "</text>\n";
    for (std::size_t j = 0; j < ys.size(); ++j)
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double v = values[j * xs.size() + i];
            const Rgb c = colormap(std::isfinite(v) ? (v - vmin) / span : NAN);
            // row 0 at the bottom
            s << "<rect x=\"" << left + cw * i << "\" y=\"" << top + h - ch * (j + 1) << "\" width=\""
              << cw + 0.05 << "\" height=\"" << ch + 0.05 << "\" fill=\"rgb(" << c.r << ',' << c.g << ','
              << c.b << ")\"/>\n";
        }
    s << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    // axis ticks: ends and middle
    for (double f : {0.0, 0.5, 1.0}) {
        const double xv = xs.front() + f * (xs.back() - xs.front());
        const double yv = ys.front() + f * (ys.back() - ys.front());
        s << "<text x=\"" << left + f * w << "\" y=\"" << top + h + 16 << "\" text-anchor=\"middle\">"
          << detail::num(xv) << "</text>\n";
        s << "<text x=\"" << left - 6 << "\" y=\"" << top + h - f * h + 4 << "\" text-anchor=\"end\">"
          << detail::num(yv) << "</text>\n";
    }
    s << "<text x=\"" << left + w / 2 << "\" y=\"" << top + h + 36 << "\" text-anchor=\"middle\">"
      << escape(labels.x) << "</text>\n";
    s << "<text transform=\"translate(" << left - 50 << ',' << top + h / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(labels.y) << "</text>\n";

    // colour bar, linear, min at the bottom
    const int steps = 64;
    for (int k = 0; k < steps; ++k) {
        const Rgb c = colormap((k + 0.5) / steps);
        s << "<rect x=\"" << bar_x << "\" y=\"" << top + h - h * (k + 1) / steps << "\" width=\"" << bar_w
          << "\" height=\"" << h / steps + 0.05 << "\" fill=\"rgb(" << c.r << ',' << c.g << ',' << c.b
          << ")\"/>\n";
    }
    s << "<rect x=\"" << bar_x << "\" y=\"" << top << "\" width=\"" << bar_w << "\" height=\"" << h
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    s << "<text x=\"" << bar_x + bar_w + 4 << "\" y=\"" << top + 10 << "\">max " << detail::num(vmax) << "</text>\n";
    s << "<text x=\"" << bar_x + bar_w + 4 << "\" y=\"" << top + h << "\">min " << detail::num(vmin) << "</text>\n";
    s << "<text transform=\"translate(" << bar_x + bar_w + 40 << ',' << top + h / 2
      << ") rotate(90)\" text-anchor=\"middle\">" << escape(labels.value) << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

// 1-D sweep rendered as a single path; non-finite samples break the line.
inline std::string line_plot(const std::vector<double>& xs, const std::vector<double>& ys, const PlotLabels& labels) {
    tmsf::detail::require(!xs.empty() && xs.size() == ys.size(), "line plot needs matching samples");
    const double left = 80, top = 40, w = 540, h = 360;
    const auto [vmin, vmax] = detail::finite_range(ys);
    const double span = vmax > vmin ? vmax - vmin : 1.0;
    const double xspan = xs.back() > xs.front() ? xs.back() - xs.front() : 1.0;

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"700\" height=\"460\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect width=\"700\" height=\"460\" fill=\"white\"/>\n";
    s << "<text x=\"" << left + w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(labels.title) << "</text>\n";
    s << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    std::string path;
    bool pen = false;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(ys[i])) {
            pen = false;
            continue;
        }
        const double px = left + (xs[i] - xs.front()) / xspan * w;
        const double py = top + h - (ys[i] - vmin) / span * h;
        path += (pen ? " L" : " M") + detail::num(px) + ' ' + detail::num(py);
        pen = true;
    }
    s << "<path d=\"" << path << "\" fill=\"none\" stroke=\"rgb(59,81,139)\" stroke-width=\"1.5\"/>\n";
    for (double f : {0.0, 0.5, 1.0}) {
        s << "<text x=\"" << left + f * w << "\" y=\"" << top + h + 16 << "\" text-anchor=\"middle\">"
          << detail::num(xs.front() + f * (xs.back() - xs.front())) << "</text>\n";
        s << "<text x=\"" << left - 6 << "\" y=\"" << top + h - f * h + 4 << "\" text-anchor=\"end\">"
          << detail::num(vmin + f * (vmax - vmin)) << "</text>\n";
    }
    s << "<text x=\"" << left + w / 2 << "\" y=\"" << top + h + 36 << "\" text-anchor=\"middle\">"
      << escape(labels.x) << "</text>\n";
    s << "<text transform=\"translate(" << left - 50 << ',' << top + h / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(labels.value) << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

// Renders one numeric column of a sweep: heatmap for 2-D grids, line for 1-D.
inline std::string render_sweep(const sweep::SweepResult& res, const std::string& x_name,
                                const std::string& y_name, const std::string& column, const std::string& title) {
    std::vector<double> values, xs, ys;
    for (const auto& row : res.rows) {
        const auto* v = row.find(column);
        if (!v) throw InvalidArgument("sweep has no column '" + column + "' to plot");
        values.push_back(std::holds_alternative<double>(*v) ? std::get<double>(*v) : NAN);
    }
    auto axis_values = [&](const std::string& name, bool first_axis) {
        std::vector<double> a;
        const int n = first_axis ? res.n1 : res.n2;
        for (int k = 0; k < n; ++k) {
            const auto& row = res.rows[static_cast<std::size_t>(first_axis ? k : k * res.n1)];
            a.push_back(std::get<double>(*row.find(name)));
        }
        return a;
    };
    xs = axis_values(x_name, true);
    if (res.n2 == 1) return line_plot(xs, values, {title, x_name, "", column});
    ys = axis_values(y_name, false);
    return heatmap(xs, ys, values, {title, x_name, y_name, column});
}

} // namespace tmsf::svg
