#pragma once

#include <cstdint>

#include "core.hpp"
#include "lattice.hpp"

namespace smf {

enum class LemmaCase { MenOptimalIsSexEqual, WomenOptimalIsSexEqual, Interior };

const char* to_string(LemmaCase c);

struct Classification {
    LemmaCase lemma_case = LemmaCase::Interior;
    Matching men_optimal;
    Matching women_optimal;
    WelfareScores men_optimal_scores;
    WelfareScores women_optimal_scores;
};

/// Runs DA from both sides. Men-optimal is sex-equal when
/// S_M(mu^M) >= S_W(mu^M); women-optimal is when S_M(mu^W) <= S_W(mu^W).
/// When both hold, the men-optimal case is reported.
Classification classify_instance(const PreferenceProfile& profile);

struct SearchResult {
    Matching matching;
    WelfareScores scores;
    std::int64_t cost = 0;
    bool optimal = false;
    std::uint64_t visited = 0;
};

/// Sex-equal stable matching. Instances where an extreme matching is
/// provably sex-equal return it without enumeration; otherwise the lattice
/// is enumerated and the lexicographically smallest minimiser returned. A
/// budget hit yields the best matching seen with optimal == false.
SearchResult sex_equal_exhaustive(const PreferenceProfile& profile, const EnumerationBudget& budget = {});

/// Minimum sex-equality cost over an already enumerated lattice, with the
/// same tie-break as sex_equal_exhaustive. optimal mirrors lattice.complete.
SearchResult sex_equal_over(const PreferenceProfile& profile, const StableLattice& lattice);

struct IbilsOptions {
    int depth_limit = 0;  // 0 selects 2n
    int width_limit = 8;
};

/// Bidirectional local search over the lattice: a downward frontier from
/// mu^M (rotation elimination) and an upward one from mu^W (elimination in
/// the side-swapped market), each cut to the `width_limit` cheapest per
/// level, for at most `depth_limit` levels. Since S_M - S_W only grows
/// downwards, a downward node with S_M >= S_W (upward: S_M <= S_W) is not
/// expanded further. Stops early at cost 0.
SearchResult ibils_search(const PreferenceProfile& profile, const IbilsOptions& options = {});

struct WelfareGap {
    std::int64_t gap_m = 0;
    std::int64_t gap_w = 0;
};

/// gap_m = S_M(mu^W) - S_M(mu^M); gap_w = S_W(mu^M) - S_W(mu^W).
WelfareGap welfare_gap(const PreferenceProfile& profile);

}  // namespace smf
