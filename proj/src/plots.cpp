#include "plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

namespace smf {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 170;
constexpr double kTop = 40;
constexpr double kBottom = 50;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
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

std::string header(const std::string& title) {
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
                    num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
         xml_escape(title) + "</text>\n";
    return s;
}

std::string axis_labels(const std::string& x_label, const std::string& y_label) {
    const double plot_mid_x = kLeft + (kWidth - kLeft - kRight) / 2;
    const double plot_mid_y = kTop + (kHeight - kTop - kBottom) / 2;
    std::string s = "<text x=\"" + num(plot_mid_x) + "\" y=\"" + num(kHeight - 10) + "\" text-anchor=\"middle\">" +
                    xml_escape(x_label) + "</text>\n";
    s += "<text transform=\"translate(18," + num(plot_mid_y) + ") rotate(-90)\" text-anchor=\"middle\">" +
         xml_escape(y_label) + "</text>\n";
    return s;
}

// Blue to red through white-ish yellow.
std::string colour(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const double r = t < 0.5 ? 49 + t * 2 * (255 - 49) : 255 - (t - 0.5) * 2 * (255 - 215);
    const double g = t < 0.5 ? 54 + t * 2 * (255 - 54) : 255 - (t - 0.5) * 2 * (255 - 48);
    const double b = t < 0.5 ? 149 + t * 2 * (191 - 149) : 191 - (t - 0.5) * 2 * (191 - 39);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(r), static_cast<int>(g), static_cast<int>(b));
    return buf;
}

}  // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                           std::span<const Series> series) {
    double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    }
    if (!std::isfinite(x_lo)) x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    if (x_hi == x_lo) x_lo -= 0.5, x_hi += 0.5;
    y_lo = std::min(y_lo, 0.0);
    if (y_hi == y_lo) y_hi = y_lo + 1;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
    auto py = [&](double y) { return kTop + ph - (y - y_lo) / (y_hi - y_lo) * ph; };

    std::string svg = header(title);
    svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / 4;
        const double y = y_lo + (y_hi - y_lo) * i / 4;
        svg += "<text x=\"" + num(px(x)) + "\" y=\"" + num(kTop + ph + 16) + "\" text-anchor=\"middle\">" + num(x) +
               "</text>\n";
        svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(y) + 4) + "\" text-anchor=\"end\">" + num(y) +
               "</text>\n";
        svg += "<line x1=\"" + num(kLeft) + "\" x2=\"" + num(kLeft + pw) + "\" y1=\"" + num(py(y)) + "\" y2=\"" +
               num(py(y)) + "\" stroke=\"#ddd\"/>\n";
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* c = kPalette[i % std::size(kPalette)];
        auto points = series[i].points;
        std::sort(points.begin(), points.end());
        std::string path;
        for (const auto& [x, y] : points) path += (path.empty() ? "" : " ") + num(px(x)) + "," + num(py(y));
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(c) + "\" stroke-width=\"2\" points=\"" + path +
               "\"/>\n";
        for (const auto& [x, y] : points) {
            svg += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"3\" fill=\"" + c + "\"/>\n";
        }
        const double ly = kTop + 10 + 18 * static_cast<double>(i);
        svg += "<rect x=\"" + num(kWidth - kRight + 12) + "\" y=\"" + num(ly - 8) + "\" width=\"10\" height=\"10\" fill=\"" +
               c + "\"/>\n";
        svg += "<text x=\"" + num(kWidth - kRight + 28) + "\" y=\"" + num(ly + 1) + "\">" +
               xml_escape(series[i].label) + "</text>\n";
    }
    svg += axis_labels(x_label, y_label);
    svg += "</svg>\n";
    return svg;
}

std::string heatmap_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                        std::span<const HeatCell> cells, bool log_scale) {
    std::set<double> xs, ys;
    double lo = INFINITY, hi = -INFINITY;
    auto scale = [&](double v) { return log_scale ? std::log1p(std::max(v, 0.0)) : v; };
    for (const auto& c : cells) {
        xs.insert(c.x);
        ys.insert(c.y);
        lo = std::min(lo, scale(c.value));
        hi = std::max(hi, scale(c.value));
    }
    std::string svg = header(title);
    if (cells.empty()) return svg + "</svg>\n";

    const std::vector<double> xv(xs.begin(), xs.end()), yv(ys.begin(), ys.end());
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    const double cw = pw / static_cast<double>(xv.size());
    const double ch = ph / static_cast<double>(yv.size());
    auto xi = [&](double x) { return static_cast<double>(std::lower_bound(xv.begin(), xv.end(), x) - xv.begin()); };
    auto yi = [&](double y) { return static_cast<double>(std::lower_bound(yv.begin(), yv.end(), y) - yv.begin()); };

    for (const auto& c : cells) {
        const double t = hi > lo ? (scale(c.value) - lo) / (hi - lo) : 0.5;
        const double x = kLeft + xi(c.x) * cw;
        const double y = kTop + ph - (yi(c.y) + 1) * ch;
        svg += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(cw) + "\" height=\"" + num(ch) +
               "\" fill=\"" + colour(t) + "\" stroke=\"white\"/>\n";
        if (cw >= 28 && ch >= 14) {
            svg += "<text x=\"" + num(x + cw / 2) + "\" y=\"" + num(y + ch / 2 + 4) +
                   "\" text-anchor=\"middle\" font-size=\"10\">" + num(c.value) + "</text>\n";
        }
    }
    for (std::size_t i = 0; i < xv.size(); ++i) {
        svg += "<text x=\"" + num(kLeft + (static_cast<double>(i) + 0.5) * cw) + "\" y=\"" + num(kTop + ph + 16) +
               "\" text-anchor=\"middle\">" + num(xv[i]) + "</text>\n";
    }
    for (std::size_t i = 0; i < yv.size(); ++i) {
        svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(kTop + ph - (static_cast<double>(i) + 0.5) * ch + 4) +
               "\" text-anchor=\"end\">" + num(yv[i]) + "</text>\n";
    }
    const double lx = kWidth - kRight + 20;
    for (int i = 0; i < 10; ++i) {
        svg += "<rect x=\"" + num(lx) + "\" y=\"" + num(kTop + ph - (i + 1) * ph / 10) + "\" width=\"16\" height=\"" +
               num(ph / 10) + "\" fill=\"" + colour((i + 0.5) / 10) + "\"/>\n";
    }
    auto unscale = [&](double v) { return log_scale ? std::expm1(v) : v; };
    svg += "<text x=\"" + num(lx + 22) + "\" y=\"" + num(kTop + ph) + "\">" + num(unscale(lo)) + "</text>\n";
    svg += "<text x=\"" + num(lx + 22) + "\" y=\"" + num(kTop + 10) + "\">" + num(unscale(hi)) + "</text>\n";
    svg += axis_labels(x_label, y_label);
    svg += "</svg>\n";
    return svg;
}

std::vector<PlotFile> render_plots(const ExperimentConfig& config, std::span<const SummaryStat> stats) {
    std::set<double> phi_ms, phi_ws;
    for (const auto& p : config.phi_grid) {
        phi_ms.insert(p.phi_m);
        phi_ws.insert(p.phi_w);
    }
    const bool grid_2d = phi_ms.size() > 1 && phi_ws.size() > 1;

    std::vector<PlotFile> files;
    for (const auto& column : summary_columns(config)) {
        if (column == "censored") continue;
        const bool binary = is_binary_column(column);
        const Statistic stat = binary ? Statistic::Mean : Statistic::Median;
        const std::string stat_name = binary ? "mean" : "median";

        std::map<int, std::vector<HeatCell>> heat;
        std::map<std::pair<int, double>, Series> lines;
        for (const auto& s : stats) {
            if (s.column != column || s.statistic != stat) continue;
            heat[s.n].push_back({s.phi_m, s.phi_w, s.value});
            auto& series = lines[{s.n, s.phi_m}];
            series.label = "n=" + std::to_string(s.n) + " phi_m=" + num(s.phi_m);
            series.points.emplace_back(s.phi_w - s.phi_m, s.value);
        }
        if (lines.empty()) continue;

        if (grid_2d) {
            for (const auto& [n, cells] : heat) {
                files.push_back({column + "_n" + std::to_string(n) + "_heatmap.svg",
                                 heatmap_svg(stat_name + " " + column + " (n=" + std::to_string(n) + ")", "phi_m",
                                             "phi_w", cells, column == "lattice_size")});
            }
        }
        std::vector<Series> series;
        for (auto& [key, s] : lines) series.push_back(std::move(s));
        files.push_back({column + "_disparity.svg",
                         line_chart_svg(stat_name + " " + column, "phi_w - phi_m", column, series)});
    }
    return files;
}

}  // namespace smf
