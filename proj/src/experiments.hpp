#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairness.hpp"
#include "lattice.hpp"
#include "rotation_poset.hpp"
#include "stats.hpp"

namespace smf {

enum class Measurement {
    LatticeSize,
    RotationStats,
    SexEqualLocation,
    DaCosts,
    AlgoComparison,
    EgalitarianCost,
    WelfareScatter,
    Runtime,
};

const char* to_string(Measurement m);
/// Accepts the enum spelling ("LatticeSize") or snake case ("lattice_size").
std::optional<Measurement> parse_measurement(std::string_view text);

struct PhiPair {
    double phi_m = 1.0;
    double phi_w = 1.0;
};

struct ExperimentBudgets {
    EnumerationBudget enumeration;
    IbilsOptions ibils;
    std::uint64_t max_downset_states = kDefaultDownsetStates;
};

struct ExperimentConfig {
    std::vector<int> n_values;
    std::vector<PhiPair> phi_grid;
    int instances_per_cell = 1;
    std::uint64_t master_seed = 0;
    std::vector<Measurement> measurements;
    ExperimentBudgets budgets;
    int bootstrap_repeats = kDefaultBootstrapRepeats;

    bool has(Measurement m) const;
    std::size_t cell_count() const { return n_values.size() * phi_grid.size(); }
    std::size_t record_count() const { return cell_count() * static_cast<std::size_t>(instances_per_cell); }

    /// Throws InvalidInput describing the first violated constraint.
    void validate() const;

    /// Parse and validate a JSON document mirroring the fields above.
    /// Throws Parse on malformed JSON or unknown keys.
    static ExperimentConfig from_json(std::string_view text);
};

/// Cells are ordered n-major: cell = n_index * |phi_grid| + phi_index.
struct CellSpec {
    std::size_t index = 0;
    int n = 0;
    PhiPair phi;
};

CellSpec cell_spec(const ExperimentConfig& config, std::size_t cell);

/// Seconds spent inside each solver call.
struct AlgoTimes {
    std::optional<double> da_men;
    std::optional<double> da_women;
    std::optional<double> da_star;
    std::optional<double> exhaustive;
    std::optional<double> ibils;
};

struct ResultRecord {
    std::size_t cell = 0;
    std::size_t instance = 0;
    int n = 0;
    double phi_m = 0.0;
    double phi_w = 0.0;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> lattice_size;
    std::optional<int> rotation_count;
    std::optional<int> poset_height;
    std::optional<int> poset_width;
    std::int64_t s_m_opt = 0;
    std::int64_t s_w_opt = 0;
    std::int64_t s_m_pess = 0;
    std::int64_t s_w_pess = 0;
    std::int64_t c_da_men = 0;
    std::int64_t c_da_women = 0;
    std::int64_t c_da_star = 0;
    std::optional<std::int64_t> c_sexequal;
    std::optional<std::int64_t> c_ibils;
    std::int64_t egalitarian_men_opt = 0;
    std::optional<bool> sexequal_is_extreme;
    AlgoTimes times;
    bool censored = false;
};

/// Seed of the profile behind (cell, instance).
std::uint64_t instance_seed(std::uint64_t master_seed, std::size_t cell, std::size_t instance);

/// Whether the DA outcome picked by the dispersion rule (men-optimal when
/// phi_m < phi_w, women-optimal when phi_m > phi_w, either on a tie)
/// attains the given minimum cost.
bool extreme_is_sex_equal(double phi_m, double phi_w, std::int64_t cost_men_optimal, std::int64_t cost_women_optimal,
                          std::int64_t min_cost);

ResultRecord run_instance(const ExperimentConfig& config, const CellSpec& cell, std::size_t instance);

struct RunOptions {
    int workers = 1;
    /// Called with (done, total) from worker threads, serialised.
    std::function<void(std::size_t, std::size_t)> progress;
};

/// All records ordered by (cell, instance). Content is independent of the
/// worker count; wall-time columns are only filled when Runtime is measured.
std::vector<ResultRecord> run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Record columns in output order.
const std::vector<std::string>& record_columns();

/// Column value as a number (booleans as 0/1), empty when not measured.
std::optional<double> column_value(const ResultRecord& record, std::string_view column);

bool is_binary_column(std::string_view column);

std::string csv_escape(std::string_view field);
/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

std::string records_to_csv(std::span<const ResultRecord> records);

/// Columns summarised for the requested measurements.
std::vector<std::string> summary_columns(const ExperimentConfig& config);

/// Per-cell statistics of `columns`: numeric columns get Median and Mean
/// with bootstrap intervals plus Q1, Q3 and Max; binary columns get Mean.
/// Cells without records are absent.
std::vector<SummaryStat> summarize(std::span<const ResultRecord> records, std::span<const std::string> columns,
                                   std::uint64_t seed, int repeats = kDefaultBootstrapRepeats);

std::vector<SummaryStat> summarize(const ExperimentConfig& config, std::span<const ResultRecord> records);

std::string summaries_to_csv(std::span<const SummaryStat> stats);

/// Fraction of records whose sex-equal matching is the DA extreme picked by
/// the dispersion rule, with a bootstrap interval. Records lacking the
/// measurement are skipped; throws InvalidInput when none remain.
SummaryStat sexequal_location_rate(std::span<const ResultRecord> records, int repeats, Rng& rng);

}  // namespace smf
