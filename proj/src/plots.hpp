#pragma once

#include <span>
#include <string>
#include <vector>

#include "experiments.hpp"

namespace smf {

struct PlotFile {
    std::string filename;
    std::string svg;
};

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

/// Static line chart; points of each series are drawn in x order.
std::string line_chart_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                           std::span<const Series> series);

struct HeatCell {
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;
};

/// Grid heatmap over the distinct x and y values; `log_scale` colours by
/// log(1 + value).
std::string heatmap_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                        std::span<const HeatCell> cells, bool log_scale);

/// Median plots per summarised column: a heatmap over (phi_m, phi_w) per n
/// when the grid varies on both axes, and a chart of the median against
/// phi_w - phi_m with one series per (n, phi_m).
std::vector<PlotFile> render_plots(const ExperimentConfig& config, std::span<const SummaryStat> stats);

}  // namespace smf
