#include "experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "deferred_acceptance.hpp"
#include "error.hpp"
#include "mallows.hpp"

namespace smf {

namespace {

struct MeasurementName {
    Measurement value;
    const char* name;
    const char* snake;
};

constexpr std::array<MeasurementName, 8> kMeasurementNames{{
    {Measurement::LatticeSize, "LatticeSize", "lattice_size"},
    {Measurement::RotationStats, "RotationStats", "rotation_stats"},
    {Measurement::SexEqualLocation, "SexEqualLocation", "sexequal_location"},
    {Measurement::DaCosts, "DaCosts", "da_costs"},
    {Measurement::AlgoComparison, "AlgoComparison", "algo_comparison"},
    {Measurement::EgalitarianCost, "EgalitarianCost", "egalitarian_cost"},
    {Measurement::WelfareScatter, "WelfareScatter", "welfare_scatter"},
    {Measurement::Runtime, "Runtime", "runtime"},
}};

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSummaryStream = 0x73756d6d617279ULL;

template <typename F>
auto timed(bool enabled, std::optional<double>& seconds, F&& f) {
    const auto start = Clock::now();
    auto result = f();
    if (enabled) seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

template <typename T>
T json_get(const nlohmann::json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Parse, std::string("config field '") + key + "': " + e.what());
    }
}

PhiPair parse_phi_pair(const nlohmann::json& j) {
    if (j.is_array()) {
        if (j.size() != 2 || !j[0].is_number() || !j[1].is_number())
            fail(ErrorCode::Parse, "phi_grid entries must be [phi_m, phi_w]");
        return {j[0].get<double>(), j[1].get<double>()};
    }
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (key != "phi_m" && key != "phi_w") fail(ErrorCode::Parse, "unknown phi_grid key '" + key + "'");
        }
        return {json_get<double>(j, "phi_m"), json_get<double>(j, "phi_w")};
    }
    fail(ErrorCode::Parse, "phi_grid entries must be arrays or objects");
}

void parse_budgets(const nlohmann::json& j, ExperimentBudgets& budgets) {
    if (!j.is_object()) fail(ErrorCode::Parse, "budgets must be an object");
    for (const auto& [key, value] : j.items()) {
        if (key == "max_matchings") {
            budgets.enumeration.max_matchings = json_get<std::uint64_t>(j, "max_matchings");
        } else if (key == "max_seconds") {
            budgets.enumeration.max_seconds = json_get<double>(j, "max_seconds");
        } else if (key == "ibils_depth") {
            budgets.ibils.depth_limit = json_get<int>(j, "ibils_depth");
        } else if (key == "ibils_width") {
            budgets.ibils.width_limit = json_get<int>(j, "ibils_width");
        } else if (key == "max_downset_states") {
            budgets.max_downset_states = json_get<std::uint64_t>(j, "max_downset_states");
        } else {
            fail(ErrorCode::Parse, "unknown budgets key '" + key + "'");
        }
    }
}

const std::vector<std::string> kRecordColumns{
    "cell",          "instance",      "n",          "phi_m",         "phi_w",
    "seed",          "lattice_size",  "rotation_count", "poset_height", "poset_width",
    "s_m_opt",       "s_w_opt",       "s_m_pess",   "s_w_pess",      "c_da_men",
    "c_da_women",    "c_da_star",     "c_sexequal", "c_ibils",       "egalitarian_men_opt",
    "sexequal_is_extreme", "time_da_men", "time_da_women", "time_da_star", "time_exhaustive",
    "time_ibils",    "censored",
};

template <typename T>
std::string optional_text(const std::optional<T>& v) {
    if (!v) return {};
    if constexpr (std::is_same_v<T, double>) {
        return format_double(*v);
    } else if constexpr (std::is_same_v<T, bool>) {
        return *v ? "1" : "0";
    } else {
        return std::to_string(*v);
    }
}

template <typename T>
std::optional<double> as_number(const std::optional<T>& v) {
    if (!v) return std::nullopt;
    return static_cast<double>(*v);
}

}  // namespace

const char* to_string(Measurement m) {
    for (const auto& entry : kMeasurementNames) {
        if (entry.value == m) return entry.name;
    }
    return "unknown";
}

std::optional<Measurement> parse_measurement(std::string_view text) {
    for (const auto& entry : kMeasurementNames) {
        if (text == entry.name || text == entry.snake) return entry.value;
    }
    return std::nullopt;
}

bool ExperimentConfig::has(Measurement m) const {
    return std::find(measurements.begin(), measurements.end(), m) != measurements.end();
}

void ExperimentConfig::validate() const {
    if (n_values.empty()) fail(ErrorCode::InvalidInput, "n_values must not be empty");
    for (int n : n_values) {
        if (n < 1) fail(ErrorCode::InvalidInput, "n_values entries must be positive");
    }
    if (phi_grid.empty()) fail(ErrorCode::InvalidInput, "phi_grid must not be empty");
    for (const auto& p : phi_grid) {
        const bool ok = p.phi_m >= 0.0 && p.phi_m <= 1.0 && p.phi_w >= 0.0 && p.phi_w <= 1.0;
        if (!ok) fail(ErrorCode::InvalidInput, "phi_grid values must lie in [0, 1]");
    }
    if (instances_per_cell < 1) fail(ErrorCode::InvalidInput, "instances_per_cell must be at least 1");
    if (measurements.empty()) fail(ErrorCode::InvalidInput, "measurements must not be empty");
    if (bootstrap_repeats < 1) fail(ErrorCode::InvalidInput, "bootstrap_repeats must be at least 1");
    if (budgets.enumeration.max_matchings < 1) fail(ErrorCode::InvalidInput, "max_matchings must be at least 1");
    if (!(budgets.enumeration.max_seconds > 0.0)) fail(ErrorCode::InvalidInput, "max_seconds must be positive");
    if (budgets.ibils.depth_limit < 0) fail(ErrorCode::InvalidInput, "ibils_depth must be nonnegative");
    if (budgets.ibils.width_limit < 1) fail(ErrorCode::InvalidInput, "ibils_width must be at least 1");
}

ExperimentConfig ExperimentConfig::from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::Parse, std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) fail(ErrorCode::Parse, "config must be a JSON object");

    ExperimentConfig config;
    for (const auto& [key, value] : j.items()) {
        if (key == "n_values") {
            config.n_values = json_get<std::vector<int>>(j, "n_values");
        } else if (key == "phi_grid") {
            if (!value.is_array()) fail(ErrorCode::Parse, "phi_grid must be an array");
            for (const auto& entry : value) config.phi_grid.push_back(parse_phi_pair(entry));
        } else if (key == "instances_per_cell") {
            config.instances_per_cell = json_get<int>(j, "instances_per_cell");
        } else if (key == "master_seed") {
            config.master_seed = json_get<std::uint64_t>(j, "master_seed");
        } else if (key == "measurements") {
            for (const auto& name : json_get<std::vector<std::string>>(j, "measurements")) {
                const auto m = parse_measurement(name);
                if (!m) fail(ErrorCode::Parse, "unknown measurement '" + name + "'");
                if (!config.has(*m)) config.measurements.push_back(*m);
            }
            std::sort(config.measurements.begin(), config.measurements.end());
        } else if (key == "budgets") {
            parse_budgets(value, config.budgets);
        } else if (key == "bootstrap_repeats") {
            config.bootstrap_repeats = json_get<int>(j, "bootstrap_repeats");
        } else {
            fail(ErrorCode::Parse, "unknown config key '" + key + "'");
        }
    }
    config.validate();
    return config;
}

CellSpec cell_spec(const ExperimentConfig& config, std::size_t cell) {
    if (cell >= config.cell_count()) fail(ErrorCode::InvalidInput, "cell index out of range");
    const std::size_t phis = config.phi_grid.size();
    return {cell, config.n_values[cell / phis], config.phi_grid[cell % phis]};
}

std::uint64_t instance_seed(std::uint64_t master_seed, std::size_t cell, std::size_t instance) {
    return derive_seed(master_seed, cell, instance);
}

bool extreme_is_sex_equal(double phi_m, double phi_w, std::int64_t cost_men_optimal, std::int64_t cost_women_optimal,
                          std::int64_t min_cost) {
    if (phi_m < phi_w) return cost_men_optimal == min_cost;
    if (phi_m > phi_w) return cost_women_optimal == min_cost;
    return std::min(cost_men_optimal, cost_women_optimal) == min_cost;
}

ResultRecord run_instance(const ExperimentConfig& config, const CellSpec& cell, std::size_t instance) {
    ResultRecord rec;
    rec.cell = cell.index;
    rec.instance = instance;
    rec.n = cell.n;
    rec.phi_m = cell.phi.phi_m;
    rec.phi_w = cell.phi.phi_w;
    rec.seed = instance_seed(config.master_seed, cell.index, instance);

    Rng rng(rec.seed);
    const PreferenceProfile profile =
        generate_profile(cell.n, MallowsParams::with_identity(cell.n, cell.phi.phi_m, cell.phi.phi_w), rng);

    const bool timing = config.has(Measurement::Runtime);
    const DaResult men =
        timed(timing, rec.times.da_men, [&] { return deferred_acceptance(profile, Side::Men); });
    const DaResult women =
        timed(timing, rec.times.da_women, [&] { return deferred_acceptance(profile, Side::Women); });
    const DaStarResult star =
        timed(timing, rec.times.da_star, [&] { return da_star(profile, cell.phi.phi_m, cell.phi.phi_w); });

    const WelfareScores opt = welfare(profile, men.matching);
    const WelfareScores pess = welfare(profile, women.matching);
    rec.s_m_opt = opt.s_m;
    rec.s_w_opt = opt.s_w;
    rec.s_m_pess = pess.s_m;
    rec.s_w_pess = pess.s_w;
    rec.c_da_men = sex_equality_cost(opt);
    rec.c_da_women = sex_equality_cost(pess);
    rec.c_da_star = sex_equality_cost(welfare(profile, star.matching));
    rec.egalitarian_men_opt = egalitarian_cost(opt);

    const bool rotation_stats = config.has(Measurement::RotationStats);
    std::optional<StableLattice> lattice;
    if (rotation_stats || config.has(Measurement::LatticeSize)) {
        LatticeOptions options;
        options.budget = config.budgets.enumeration;
        options.with_hasse = rotation_stats;
        lattice = enumerate_lattice(profile, options);
        rec.lattice_size = lattice->size();
        if (!lattice->complete) rec.censored = true;
        if (rotation_stats && lattice->complete) {
            const RotationPoset poset = build_rotation_poset(profile, *lattice);
            rec.rotation_count = static_cast<int>(poset.r());
            rec.poset_height = poset.height();
            rec.poset_width = poset.width();
        }
    }

    if (config.has(Measurement::SexEqualLocation) || config.has(Measurement::AlgoComparison)) {
        const SearchResult best = timed(timing, rec.times.exhaustive, [&] {
            if (lattice && lattice->complete && !timing) return sex_equal_over(profile, *lattice);
            return sex_equal_exhaustive(profile, config.budgets.enumeration);
        });
        rec.c_sexequal = best.cost;
        if (!best.optimal) rec.censored = true;
        rec.sexequal_is_extreme =
            extreme_is_sex_equal(rec.phi_m, rec.phi_w, rec.c_da_men, rec.c_da_women, best.cost);
    }

    if (config.has(Measurement::AlgoComparison)) {
        const SearchResult local =
            timed(timing, rec.times.ibils, [&] { return ibils_search(profile, config.budgets.ibils); });
        rec.c_ibils = local.cost;
    }
    return rec;
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    config.validate();
    const std::size_t per_cell = static_cast<std::size_t>(config.instances_per_cell);
    const std::size_t total = config.record_count();
    std::vector<ResultRecord> records(total);

    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex mutex;
    std::size_t done = 0;
    std::exception_ptr error;

    auto worker = [&] {
        while (!stop.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= total) return;
            try {
                records[i] = run_instance(config, cell_spec(config, i / per_cell), i % per_cell);
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!error) error = std::current_exception();
                stop = true;
                return;
            }
            std::lock_guard lock(mutex);
            ++done;
            if (options.progress) options.progress(done, total);
        }
    };

    const std::size_t workers =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::max(options.workers, 1)), 1, std::max<std::size_t>(total, 1));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    if (error) std::rethrow_exception(error);
    return records;
}

const std::vector<std::string>& record_columns() { return kRecordColumns; }

std::optional<double> column_value(const ResultRecord& r, std::string_view column) {
    if (column == "cell") return static_cast<double>(r.cell);
    if (column == "instance") return static_cast<double>(r.instance);
    if (column == "n") return r.n;
    if (column == "phi_m") return r.phi_m;
    if (column == "phi_w") return r.phi_w;
    if (column == "seed") return static_cast<double>(r.seed);
    if (column == "lattice_size") return as_number(r.lattice_size);
    if (column == "rotation_count") return as_number(r.rotation_count);
    if (column == "poset_height") return as_number(r.poset_height);
    if (column == "poset_width") return as_number(r.poset_width);
    if (column == "s_m_opt") return static_cast<double>(r.s_m_opt);
    if (column == "s_w_opt") return static_cast<double>(r.s_w_opt);
    if (column == "s_m_pess") return static_cast<double>(r.s_m_pess);
    if (column == "s_w_pess") return static_cast<double>(r.s_w_pess);
    if (column == "c_da_men") return static_cast<double>(r.c_da_men);
    if (column == "c_da_women") return static_cast<double>(r.c_da_women);
    if (column == "c_da_star") return static_cast<double>(r.c_da_star);
    if (column == "c_sexequal") return as_number(r.c_sexequal);
    if (column == "c_ibils") return as_number(r.c_ibils);
    if (column == "egalitarian_men_opt") return static_cast<double>(r.egalitarian_men_opt);
    if (column == "sexequal_is_extreme") return as_number(r.sexequal_is_extreme);
    if (column == "time_da_men") return r.times.da_men;
    if (column == "time_da_women") return r.times.da_women;
    if (column == "time_da_star") return r.times.da_star;
    if (column == "time_exhaustive") return r.times.exhaustive;
    if (column == "time_ibils") return r.times.ibils;
    if (column == "censored") return r.censored ? 1.0 : 0.0;
    fail(ErrorCode::InvalidInput, "unknown record column '" + std::string(column) + "'");
}

bool is_binary_column(std::string_view column) { return column == "sexequal_is_extreme" || column == "censored"; }

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

std::string records_to_csv(std::span<const ResultRecord> records) {
    std::string out;
    for (std::size_t i = 0; i < kRecordColumns.size(); ++i) {
        if (i) out += ',';
        out += kRecordColumns[i];
    }
    out += "\r\n";
    for (const auto& r : records) {
        const std::array<std::string, 27> fields{
            std::to_string(r.cell),
            std::to_string(r.instance),
            std::to_string(r.n),
            format_double(r.phi_m),
            format_double(r.phi_w),
            std::to_string(r.seed),
            optional_text(r.lattice_size),
            optional_text(r.rotation_count),
            optional_text(r.poset_height),
            optional_text(r.poset_width),
            std::to_string(r.s_m_opt),
            std::to_string(r.s_w_opt),
            std::to_string(r.s_m_pess),
            std::to_string(r.s_w_pess),
            std::to_string(r.c_da_men),
            std::to_string(r.c_da_women),
            std::to_string(r.c_da_star),
            optional_text(r.c_sexequal),
            optional_text(r.c_ibils),
            std::to_string(r.egalitarian_men_opt),
            optional_text(r.sexequal_is_extreme),
            optional_text(r.times.da_men),
            optional_text(r.times.da_women),
            optional_text(r.times.da_star),
            optional_text(r.times.exhaustive),
            optional_text(r.times.ibils),
            r.censored ? "1" : "0",
        };
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(fields[i]);
        }
        out += "\r\n";
    }
    return out;
}

std::vector<std::string> summary_columns(const ExperimentConfig& config) {
    std::vector<std::string> cols;
    auto add = [&](std::initializer_list<const char*> names) {
        for (const char* name : names) {
            if (std::find(cols.begin(), cols.end(), name) == cols.end()) cols.emplace_back(name);
        }
    };
    for (Measurement m : config.measurements) {
        switch (m) {
            case Measurement::LatticeSize: add({"lattice_size"}); break;
            case Measurement::RotationStats: add({"lattice_size", "rotation_count", "poset_height", "poset_width"}); break;
            case Measurement::SexEqualLocation: add({"sexequal_is_extreme", "c_sexequal"}); break;
            case Measurement::DaCosts: add({"c_da_men", "c_da_women", "c_da_star"}); break;
            case Measurement::AlgoComparison:
                add({"c_da_men", "c_da_women", "c_da_star", "c_sexequal", "c_ibils"});
                break;
            case Measurement::EgalitarianCost: add({"egalitarian_men_opt"}); break;
            case Measurement::WelfareScatter: add({"s_m_opt", "s_w_opt", "s_m_pess", "s_w_pess"}); break;
            case Measurement::Runtime:
                add({"time_da_men", "time_da_women", "time_da_star"});
                if (config.has(Measurement::SexEqualLocation) || config.has(Measurement::AlgoComparison))
                    add({"time_exhaustive"});
                if (config.has(Measurement::AlgoComparison)) add({"time_ibils"});
                break;
        }
    }
    add({"censored"});
    return cols;
}

std::vector<SummaryStat> summarize(std::span<const ResultRecord> records, std::span<const std::string> columns,
                                   std::uint64_t seed, int repeats) {
    std::map<std::size_t, std::vector<const ResultRecord*>> cells;
    for (const auto& r : records) cells[r.cell].push_back(&r);

    std::vector<SummaryStat> out;
    for (const auto& [cell, rows] : cells) {
        const ResultRecord& head = *rows.front();
        double censored = 0.0;
        for (const auto* r : rows) censored += r->censored ? 1.0 : 0.0;
        censored /= static_cast<double>(rows.size());

        for (std::size_t c = 0; c < columns.size(); ++c) {
            std::vector<double> values;
            values.reserve(rows.size());
            for (const auto* r : rows) {
                if (auto v = column_value(*r, columns[c])) values.push_back(*v);
            }
            if (values.empty()) continue;

            auto emit = [&](SummaryStat s) {
                s.cell = cell;
                s.n = head.n;
                s.phi_m = head.phi_m;
                s.phi_w = head.phi_w;
                s.column = columns[c];
                s.count = values.size();
                s.censored_fraction = censored;
                s.censoring_flag = censored > 0.01;
                out.push_back(std::move(s));
            };
            auto with_ci = [&](Statistic stat) {
                Rng rng(derive_seed(seed, cell, c * 8 + static_cast<std::size_t>(stat)));
                emit(bootstrap_ci(values, stat, repeats, rng));
            };
            auto plain = [&](Statistic stat) {
                SummaryStat s;
                s.statistic = stat;
                s.value = compute_statistic(values, stat);
                emit(std::move(s));
            };

            if (is_binary_column(columns[c])) {
                with_ci(Statistic::Mean);
                continue;
            }
            with_ci(Statistic::Median);
            with_ci(Statistic::Mean);
            plain(Statistic::Q1);
            plain(Statistic::Q3);
            plain(Statistic::Max);
        }
    }
    return out;
}

std::vector<SummaryStat> summarize(const ExperimentConfig& config, std::span<const ResultRecord> records) {
    const auto columns = summary_columns(config);
    return summarize(records, columns, derive_seed(config.master_seed, kSummaryStream), config.bootstrap_repeats);
}

std::string summaries_to_csv(std::span<const SummaryStat> stats) {
    std::string out = "cell,n,phi_m,phi_w,column,statistic,value,ci_low,ci_high,count,censored_fraction,censoring_flag\r\n";
    for (const auto& s : stats) {
        out += std::to_string(s.cell);
        out += ',' + std::to_string(s.n);
        out += ',' + format_double(s.phi_m);
        out += ',' + format_double(s.phi_w);
        out += ',' + csv_escape(s.column);
        out += ',' + std::string(to_string(s.statistic));
        out += ',' + format_double(s.value);
        out += ',' + optional_text(s.ci_low);
        out += ',' + optional_text(s.ci_high);
        out += ',' + std::to_string(s.count);
        out += ',' + format_double(s.censored_fraction);
        out += s.censoring_flag ? ",1" : ",0";
        out += "\r\n";
    }
    return out;
}

SummaryStat sexequal_location_rate(std::span<const ResultRecord> records, int repeats, Rng& rng) {
    std::vector<double> values;
    const ResultRecord* head = nullptr;
    double censored = 0.0;
    for (const auto& r : records) {
        if (!r.sexequal_is_extreme) continue;
        if (!head) head = &r;
        values.push_back(*r.sexequal_is_extreme ? 1.0 : 0.0);
        censored += r.censored ? 1.0 : 0.0;
    }
    if (values.empty()) fail(ErrorCode::InvalidInput, "no records carry sexequal_is_extreme");
    SummaryStat s = bootstrap_ci(values, Statistic::Mean, repeats, rng);
    s.cell = head->cell;
    s.n = head->n;
    s.phi_m = head->phi_m;
    s.phi_w = head->phi_w;
    s.column = "sexequal_is_extreme";
    s.count = values.size();
    s.censored_fraction = censored / static_cast<double>(values.size());
    s.censoring_flag = s.censored_fraction > 0.01;
    return s;
}

}  // namespace smf
