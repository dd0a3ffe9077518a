#include "smfair/smfair.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <string>

#include "deferred_acceptance.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "fairness.hpp"
#include "instance_io.hpp"
#include "lattice_export.hpp"
#include "mallows.hpp"
#include "plots.hpp"

struct smf_profile {
    smf::Instance instance;
};

struct smf_lattice {
    smf::LatticeReport report;
};

namespace {

thread_local std::string g_last_error;

smf_status status_of(smf::ErrorCode code) {
    switch (code) {
        case smf::ErrorCode::InvalidInput: return SMF_ERR_INVALID_ARGUMENT;
        case smf::ErrorCode::InvalidAgent: return SMF_ERR_INVALID_AGENT;
        case smf::ErrorCode::InvalidMatching: return SMF_ERR_INVALID_MATCHING;
        case smf::ErrorCode::Parse: return SMF_ERR_PARSE;
        case smf::ErrorCode::Io: return SMF_ERR_IO;
        case smf::ErrorCode::Estimation: return SMF_ERR_ESTIMATION;
        case smf::ErrorCode::BudgetExceeded: return SMF_ERR_BUDGET_EXCEEDED;
        case smf::ErrorCode::RotationNotExposed: return SMF_ERR_ROTATION_NOT_EXPOSED;
        case smf::ErrorCode::Degenerate: return SMF_ERR_DEGENERATE;
    }
    return SMF_ERR_INTERNAL;
}

smf_status set_error(smf_status status, const char* message) {
    g_last_error = message;
    return status;
}

template <typename F>
smf_status guarded(F&& f) {
    g_last_error.clear();
    try {
        return f();
    } catch (const smf::Error& e) {
        return set_error(status_of(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(SMF_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(SMF_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(SMF_ERR_INTERNAL, "unknown error");
    }
}

void require(bool condition, const char* message) {
    if (!condition) smf::fail(smf::ErrorCode::InvalidInput, message);
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

smf::Side side_of(smf_side side) {
    if (side == SMF_SIDE_MEN) return smf::Side::Men;
    if (side == SMF_SIDE_WOMEN) return smf::Side::Women;
    smf::fail(smf::ErrorCode::InvalidInput, "side must be SMF_SIDE_MEN or SMF_SIDE_WOMEN");
}

smf_side c_side(smf::Side side) { return side == smf::Side::Men ? SMF_SIDE_MEN : SMF_SIDE_WOMEN; }

smf::InstanceFormat format_of(smf_format format) {
    if (format == SMF_FORMAT_JSON) return smf::InstanceFormat::Json;
    if (format == SMF_FORMAT_SOC) return smf::InstanceFormat::Soc;
    smf::fail(smf::ErrorCode::InvalidInput, "unknown format");
}

const smf::PreferenceProfile& profile_of(const smf_profile* p) {
    require(p != nullptr, "profile is null");
    return p->instance.profile;
}

smf::Matching matching_from(const smf::PreferenceProfile& profile, const int32_t* partners) {
    require(partners != nullptr, "matching is null");
    const int n = profile.size();
    std::vector<int> wives(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        if (partners[m] < 1 || partners[m] > n)
            smf::fail(smf::ErrorCode::InvalidMatching, "matching entries must lie in 1..n");
        wives[static_cast<std::size_t>(m)] = partners[m] - 1;
    }
    return smf::Matching(std::move(wives));
}

void write_matching(const smf::Matching& mu, int32_t* out) {
    if (!out) return;
    const auto wives = mu.partners_of_men();
    for (std::size_t m = 0; m < wives.size(); ++m) out[m] = wives[m] + 1;
}

smf_welfare c_welfare(smf::WelfareScores s) {
    return {s.s_m, s.s_w, smf::sex_equality_cost(s), smf::egalitarian_cost(s)};
}

smf_status store_profile(smf::Instance instance, smf_profile** out) {
    require(out != nullptr, "output pointer is null");
    *out = new smf_profile{std::move(instance)};
    return SMF_OK;
}

smf_solve_result solve_result(const smf::PreferenceProfile& profile, const smf::Matching& mu,
                              const smf::DaTrace& trace, smf::Side side, double phi_m, double phi_w) {
    smf_solve_result r{};
    r.welfare = c_welfare(smf::welfare(profile, mu));
    r.proposals = static_cast<uint64_t>(trace.proposal_count);
    r.side_used = c_side(side);
    r.phi_m = phi_m;
    r.phi_w = phi_w;
    return r;
}

}  // namespace

extern "C" {

const char* smf_version(void) { return "1.0.0"; }

const char* smf_status_name(smf_status status) {
    switch (status) {
        case SMF_OK: return "ok";
        case SMF_ERR_INVALID_ARGUMENT: return "invalid argument";
        case SMF_ERR_INVALID_AGENT: return "invalid agent";
        case SMF_ERR_INVALID_MATCHING: return "invalid matching";
        case SMF_ERR_PARSE: return "parse error";
        case SMF_ERR_IO: return "i/o error";
        case SMF_ERR_ESTIMATION: return "estimation error";
        case SMF_ERR_BUDGET_EXCEEDED: return "budget exceeded";
        case SMF_ERR_ROTATION_NOT_EXPOSED: return "rotation not exposed";
        case SMF_ERR_DEGENERATE: return "degenerate parameter";
        case SMF_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* smf_last_error(void) { return g_last_error.c_str(); }

void smf_free_string(char* s) { std::free(s); }

smf_status smf_profile_create(int32_t n, const int32_t* men_prefs, const int32_t* women_prefs, smf_profile** out) {
    return guarded([&] {
        require(n >= 1, "n must be positive");
        require(men_prefs && women_prefs, "preference arrays are null");
        const auto un = static_cast<std::size_t>(n);
        std::vector<std::vector<int>> men(un), women(un);
        for (std::size_t i = 0; i < un; ++i) {
            for (std::size_t j = 0; j < un; ++j) {
                const int32_t a = men_prefs[i * un + j];
                const int32_t b = women_prefs[i * un + j];
                require(a >= 1 && a <= n && b >= 1 && b <= n, "preference entries must lie in 1..n");
                men[i].push_back(a - 1);
                women[i].push_back(b - 1);
            }
        }
        return store_profile({smf::PreferenceProfile(men, women), {}}, out);
    });
}

smf_status smf_profile_generate(int32_t n, double phi_m, double phi_w, uint64_t seed, uint64_t stream,
                                smf_profile** out) {
    return guarded([&] {
        require(n >= 1, "n must be positive");
        require(phi_m >= 0.0 && phi_m <= 1.0 && phi_w >= 0.0 && phi_w <= 1.0, "phi must lie in [0, 1]");
        smf::Rng rng(seed, stream);
        smf::Instance instance{smf::generate_profile(n, smf::MallowsParams::with_identity(n, phi_m, phi_w), rng),
                               {phi_m, phi_w, seed, stream}};
        return store_profile(std::move(instance), out);
    });
}

smf_status smf_profile_load(const char* path, smf_profile** out) {
    return guarded([&] {
        require(path != nullptr, "path is null");
        return store_profile(smf::load_instance(path), out);
    });
}

smf_status smf_profile_save(const smf_profile* profile, const char* path) {
    return guarded([&] {
        profile_of(profile);
        require(path != nullptr, "path is null");
        smf::save_instance(profile->instance, path);
        return SMF_OK;
    });
}

smf_status smf_profile_from_string(const char* text, smf_format format, smf_profile** out) {
    return guarded([&] {
        require(text != nullptr, "text is null");
        return store_profile(smf::instance_from_string(text, format_of(format)), out);
    });
}

smf_status smf_profile_to_string(const smf_profile* profile, smf_format format, char** out) {
    return guarded([&] {
        profile_of(profile);
        require(out != nullptr, "output pointer is null");
        *out = dup_string(smf::instance_to_string(profile->instance, format_of(format)));
        return SMF_OK;
    });
}

void smf_profile_destroy(smf_profile* profile) { delete profile; }

int32_t smf_profile_size(const smf_profile* profile) { return profile ? profile->instance.profile.size() : 0; }

smf_status smf_profile_metadata(const smf_profile* profile, smf_metadata* out) {
    return guarded([&] {
        profile_of(profile);
        require(out != nullptr, "output pointer is null");
        const auto& m = profile->instance.metadata;
        *out = smf_metadata{};
        out->has_phi_m = m.phi_m.has_value();
        out->phi_m = m.phi_m.value_or(0.0);
        out->has_phi_w = m.phi_w.has_value();
        out->phi_w = m.phi_w.value_or(0.0);
        out->has_seed = m.seed.has_value();
        out->seed = m.seed.value_or(0);
        out->has_stream = m.stream.has_value();
        out->stream = m.stream.value_or(0);
        return SMF_OK;
    });
}

smf_status smf_profile_list(const smf_profile* profile, smf_side side, int32_t agent, int32_t* out) {
    return guarded([&] {
        const auto& p = profile_of(profile);
        require(out != nullptr, "output buffer is null");
        if (agent < 1 || agent > p.size()) smf::fail(smf::ErrorCode::InvalidAgent, "agent out of range");
        const auto list = p.list(side_of(side), agent - 1);
        for (std::size_t i = 0; i < list.size(); ++i) out[i] = list[i] + 1;
        return SMF_OK;
    });
}

smf_status smf_profile_rank(const smf_profile* profile, smf_side side, int32_t agent, int32_t target,
                            int32_t* out_rank) {
    return guarded([&] {
        const auto& p = profile_of(profile);
        require(out_rank != nullptr, "output pointer is null");
        const smf::Side s = side_of(side);
        *out_rank = smf::rank(p, {smf::opposite(s), target - 1}, {s, agent - 1});
        return SMF_OK;
    });
}

smf_status smf_matching_welfare(const smf_profile* profile, const int32_t* partners, smf_welfare* out) {
    return guarded([&] {
        const auto& p = profile_of(profile);
        require(out != nullptr, "output pointer is null");
        *out = c_welfare(smf::welfare(p, matching_from(p, partners)));
        return SMF_OK;
    });
}

smf_status smf_matching_blocking_pairs(const smf_profile* profile, const int32_t* partners, int32_t* out_pairs,
                                       size_t capacity, size_t* count) {
    return guarded([&] {
        const auto& p = profile_of(profile);
        require(count != nullptr, "count pointer is null");
        require(capacity == 0 || out_pairs != nullptr, "output buffer is null");
        const auto pairs = smf::find_blocking_pairs(p, matching_from(p, partners));
        *count = pairs.size();
        for (std::size_t i = 0; i < pairs.size() && i < capacity; ++i) {
            out_pairs[2 * i] = pairs[i].man + 1;
            out_pairs[2 * i + 1] = pairs[i].woman + 1;
        }
        return SMF_OK;
    });
}

smf_status smf_deferred_acceptance(const smf_profile* profile, smf_side proposers, int32_t* out_partners,
                                   smf_solve_result* out) {
    return guarded([&] {
        const auto& p = profile_of(profile);
        const smf::Side side = side_of(proposers);
        const auto result = smf::deferred_acceptance(p, side);
        write_matching(result.matching, out_partners);
        if (out) {
            const auto& meta = profile->instance.metadata;
            *out = solve_result(p, result.matching, result.trace, side, meta.phi_m.value_or(0.0),
                                meta.phi_w.value_or(0.0));
        }
        return SMF_OK;
    });
}

smf_status smf_da_star(const smf_profile* profile, double phi_m, double phi_w, int32_t* out_partners,
                       smf_solve_result* out) {
    return guarded([&] {
        const auto& p = profile_of(profile);
        const auto result = smf::da_star(p, phi_m, phi_w);
        write_matching(result.matching, out_partners);
        if (out) *out = solve_result(p, result.matching, result.trace, result.side_used, result.phi_m, result.phi_w);
        return SMF_OK;
    });
}

smf_status smf_da_star_estimated(const smf_profile* profile, int32_t* out_partners, smf_solve_result* out) {
    return guarded([&] {
        const auto& p = profile_of(profile);
        const auto ref = smf::identity_permutation(p.size());
        const auto result = smf::da_star_estimated(p, ref, ref);
        write_matching(result.matching, out_partners);
        if (out) *out = solve_result(p, result.matching, result.trace, result.side_used, result.phi_m, result.phi_w);
        return SMF_OK;
    });
}

smf_lattice_options smf_lattice_options_default(void) {
    const smf::EnumerationBudget budget;
    return {budget.max_matchings, budget.max_seconds, smf::kDefaultDownsetStates};
}

smf_status smf_lattice_enumerate(const smf_profile* profile, const smf_lattice_options* options, smf_lattice** out) {
    return guarded([&] {
        const auto& p = profile_of(profile);
        require(out != nullptr, "output pointer is null");
        const smf_lattice_options opts = options ? *options : smf_lattice_options_default();
        require(opts.max_matchings >= 1, "max_matchings must be at least 1");
        require(opts.max_seconds > 0.0, "max_seconds must be positive");
        smf::LatticeOptions lo;
        lo.budget = {opts.max_matchings, opts.max_seconds};
        lo.with_hasse = true;
        auto report = smf::analyse_lattice(p, smf::enumerate_lattice(p, lo), opts.max_downset_states);
        const bool complete = report.lattice.complete;
        const auto size = report.lattice.size();
        *out = new smf_lattice{std::move(report)};
        if (!complete) {
            g_last_error = "enumeration budget exhausted after " + std::to_string(size) + " matchings";
            return SMF_ERR_BUDGET_EXCEEDED;
        }
        return SMF_OK;
    });
}

void smf_lattice_destroy(smf_lattice* lattice) { delete lattice; }

uint64_t smf_lattice_size(const smf_lattice* lattice) { return lattice ? lattice->report.lattice.size() : 0; }

int32_t smf_lattice_complete(const smf_lattice* lattice) { return lattice && lattice->report.lattice.complete; }

smf_status smf_lattice_matching(const smf_lattice* lattice, uint64_t index, int32_t* out_partners) {
    return guarded([&] {
        require(lattice != nullptr, "lattice is null");
        require(out_partners != nullptr, "output buffer is null");
        require(index < lattice->report.lattice.size(), "matching index out of range");
        write_matching(lattice->report.lattice.matchings[index], out_partners);
        return SMF_OK;
    });
}

smf_status smf_lattice_stats_get(const smf_lattice* lattice, smf_lattice_stats* out) {
    return guarded([&] {
        require(lattice != nullptr, "lattice is null");
        require(out != nullptr, "output pointer is null");
        const auto& s = lattice->report.stats;
        *out = smf_lattice_stats{};
        out->size = s.size;
        out->complete = !s.censored;
        out->has_poset = s.r.has_value();
        out->r = s.r.value_or(0);
        out->h = s.h.value_or(0);
        out->width = s.width.value_or(0);
        out->downset_check = s.downset_check;
        out->has_downsets = s.downsets.has_value();
        out->downsets = s.downsets.value_or(0);
        out->has_bound = s.max_downsets_bound.has_value();
        out->max_downsets_bound = s.max_downsets_bound.value_or(0);
        return SMF_OK;
    });
}

smf_status smf_lattice_to_json(const smf_lattice* lattice, char** out) {
    return guarded([&] {
        require(lattice != nullptr && out != nullptr, "null argument");
        *out = dup_string(smf::lattice_to_json(lattice->report));
        return SMF_OK;
    });
}

smf_status smf_lattice_to_dot(const smf_lattice* lattice, char** out) {
    return guarded([&] {
        require(lattice != nullptr && out != nullptr, "null argument");
        *out = dup_string(smf::lattice_to_dot(lattice->report));
        return SMF_OK;
    });
}

smf_status smf_classify(const smf_profile* profile, smf_classification* out) {
    return guarded([&] {
        const auto& p = profile_of(profile);
        require(out != nullptr, "output pointer is null");
        const auto c = smf::classify_instance(p);
        const auto gap = smf::welfare_gap(p);
        out->lemma_case = c.lemma_case == smf::LemmaCase::MenOptimalIsSexEqual     ? SMF_CASE_MEN_OPTIMAL
                          : c.lemma_case == smf::LemmaCase::WomenOptimalIsSexEqual ? SMF_CASE_WOMEN_OPTIMAL
                                                                                   : SMF_CASE_INTERIOR;
        out->men_optimal = c_welfare(c.men_optimal_scores);
        out->women_optimal = c_welfare(c.women_optimal_scores);
        out->gap_m = gap.gap_m;
        out->gap_w = gap.gap_w;
        return SMF_OK;
    });
}

smf_fair_options smf_fair_options_default(void) {
    const smf::EnumerationBudget budget;
    const smf::IbilsOptions ibils;
    smf_fair_options o{};
    o.method = SMF_FAIR_EXHAUSTIVE;
    o.depth = ibils.depth_limit;
    o.width = ibils.width_limit;
    o.max_matchings = budget.max_matchings;
    o.max_seconds = budget.max_seconds;
    o.has_phi = 0;
    return o;
}

smf_status smf_fair_search(const smf_profile* profile, const smf_fair_options* options, int32_t* out_partners,
                           smf_search_result* out) {
    return guarded([&] {
        const auto& p = profile_of(profile);
        const smf_fair_options opts = options ? *options : smf_fair_options_default();
        smf::SearchResult result;
        switch (opts.method) {
            case SMF_FAIR_EXHAUSTIVE: {
                require(opts.max_matchings >= 1 && opts.max_seconds > 0.0, "budget must be positive");
                result = smf::sex_equal_exhaustive(p, {opts.max_matchings, opts.max_seconds});
                break;
            }
            case SMF_FAIR_IBILS: {
                require(opts.depth >= 0 && opts.width >= 1, "depth must be nonnegative and width positive");
                result = smf::ibils_search(p, {opts.depth, opts.width});
                break;
            }
            case SMF_FAIR_DA_STAR: {
                const auto ref = smf::identity_permutation(p.size());
                const auto star = opts.has_phi ? smf::da_star(p, opts.phi_m, opts.phi_w)
                                               : smf::da_star_estimated(p, ref, ref);
                result.matching = star.matching;
                result.scores = smf::welfare(p, star.matching);
                result.cost = smf::sex_equality_cost(result.scores);
                result.optimal = result.cost == 0;
                result.visited = 1;
                break;
            }
            default:
                smf::fail(smf::ErrorCode::InvalidInput, "unknown search method");
        }
        write_matching(result.matching, out_partners);
        if (out) {
            out->welfare = c_welfare(result.scores);
            out->optimal = result.optimal;
            out->visited = result.visited;
        }
        return SMF_OK;
    });
}

smf_status smf_experiment_validate(const char* config_json) {
    return guarded([&] {
        require(config_json != nullptr, "config is null");
        smf::ExperimentConfig::from_json(config_json);
        return SMF_OK;
    });
}

smf_status smf_experiment_run(const char* config_json, const char* out_dir, int32_t workers, int32_t plots,
                              smf_progress_fn progress, void* user, smf_experiment_summary* out) {
    return guarded([&] {
        require(config_json != nullptr && out_dir != nullptr, "null argument");
        const auto config = smf::ExperimentConfig::from_json(config_json);
        const std::filesystem::path dir(out_dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) smf::fail(smf::ErrorCode::Io, "cannot create '" + dir.string() + "': " + ec.message());

        smf::RunOptions run;
        run.workers = workers;
        if (progress) run.progress = [&](std::size_t done, std::size_t total) { progress(done, total, user); };
        const auto records = smf::run_experiment(config, run);
        const auto stats = smf::summarize(config, records);
        smf::write_file(dir / "records.csv", smf::records_to_csv(records));
        smf::write_file(dir / "summary.csv", smf::summaries_to_csv(stats));

        std::size_t plot_count = 0;
        if (plots) {
            const auto plot_dir = dir / "plots";
            std::filesystem::create_directories(plot_dir, ec);
            if (ec) smf::fail(smf::ErrorCode::Io, "cannot create '" + plot_dir.string() + "': " + ec.message());
            for (const auto& file : smf::render_plots(config, stats)) {
                smf::write_file(plot_dir / file.filename, file.svg);
                ++plot_count;
            }
        }
        if (out) {
            out->records = records.size();
            out->censored = 0;
            for (const auto& r : records) out->censored += r.censored ? 1 : 0;
            out->plots = plot_count;
        }
        return SMF_OK;
    });
}

}  // extern "C"
