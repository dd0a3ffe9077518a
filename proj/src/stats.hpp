#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "rng.hpp"

namespace smf {

enum class Statistic { Median, Mean, Q1, Q3, Max };

const char* to_string(Statistic s);

/// Sample quantile with linear interpolation between order statistics
/// (R's default, type 7). p in [0, 1]. Empty input is an error.
double quantile(std::span<const double> samples, double p);

double compute_statistic(std::span<const double> samples, Statistic statistic);

/// A statistic over one experiment cell with an optional bootstrap interval.
struct SummaryStat {
    std::size_t cell = 0;
    int n = 0;
    double phi_m = 0.0;
    double phi_w = 0.0;
    std::string column;
    Statistic statistic = Statistic::Median;
    double value = 0.0;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
    std::size_t count = 0;
    double censored_fraction = 0.0;
    bool censoring_flag = false;
};

inline constexpr int kDefaultBootstrapRepeats = 100;

/// Percentile bootstrap: `repeats` resamples with replacement of the
/// sample size, interval = 2.5% and 97.5% quantiles of the resampled
/// statistic. For Median and Mean the interval is widened if needed so it
/// contains the point estimate.
SummaryStat bootstrap_ci(std::span<const double> samples, Statistic statistic, int repeats, Rng& rng);

}  // namespace smf
