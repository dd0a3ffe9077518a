#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "error.hpp"

namespace smf {

const char* to_string(Statistic s) {
    switch (s) {
        case Statistic::Median:
            return "median";
        case Statistic::Mean:
            return "mean";
        case Statistic::Q1:
            return "q1";
        case Statistic::Q3:
            return "q3";
        case Statistic::Max:
            return "max";
    }
    return "unknown";
}

namespace {

double sorted_quantile(const std::vector<double>& sorted, double p) {
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double quantile(std::span<const double> samples, double p) {
    if (samples.empty()) fail(ErrorCode::InvalidInput, "quantile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::InvalidInput, "quantile level must lie in [0, 1]");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    return sorted_quantile(sorted, p);
}

double compute_statistic(std::span<const double> samples, Statistic statistic) {
    if (samples.empty()) fail(ErrorCode::InvalidInput, "statistic of an empty sample");
    switch (statistic) {
        case Statistic::Median:
            return quantile(samples, 0.5);
        case Statistic::Q1:
            return quantile(samples, 0.25);
        case Statistic::Q3:
            return quantile(samples, 0.75);
        case Statistic::Max:
            return *std::max_element(samples.begin(), samples.end());
        case Statistic::Mean:
            return std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
    }
    return 0.0;
}

SummaryStat bootstrap_ci(std::span<const double> samples, Statistic statistic, int repeats, Rng& rng) {
    if (samples.empty()) fail(ErrorCode::InvalidInput, "bootstrap_ci: empty sample");
    if (repeats < 1) fail(ErrorCode::InvalidInput, "bootstrap_ci: repeats must be positive");

    SummaryStat out;
    out.statistic = statistic;
    out.count = samples.size();
    out.value = compute_statistic(samples, statistic);

    std::vector<double> stats(static_cast<std::size_t>(repeats));
    std::vector<double> resample(samples.size());
    for (auto& s : stats) {
        for (auto& x : resample) x = samples[rng.below(samples.size())];
        s = compute_statistic(resample, statistic);
    }
    std::sort(stats.begin(), stats.end());
    double lo = sorted_quantile(stats, 0.025);
    double hi = sorted_quantile(stats, 0.975);
    if (statistic == Statistic::Median || statistic == Statistic::Mean) {
        lo = std::min(lo, out.value);
        hi = std::max(hi, out.value);
    }
    out.ci_low = lo;
    out.ci_high = hi;
    return out;
}

}  // namespace smf
