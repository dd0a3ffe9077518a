#pragma once

#include <cstdint>
#include <span>

#include "core.hpp"
#include "mallows.hpp"
#include "rng.hpp"

namespace smf {

struct DaTrace {
    std::int64_t proposal_count = 0;
    // The sequential formulation has no synchronous rounds; one proposal
    // counts as one round.
    std::int64_t rounds = 0;
};

struct DaResult {
    Matching matching;
    DaTrace trace;
};

/// Sequential Gale-Shapley: one free proposer at a time walks down his list.
/// The result is proposer-optimal and receiver-pessimal, and the proposal
/// count equals the proposing side's welfare score.
DaResult deferred_acceptance(const PreferenceProfile& profile, Side proposers);

/// Same algorithm but the next free proposer is drawn at random. Output is
/// identical to the deterministic order; exposed for testing that claim.
DaResult deferred_acceptance(const PreferenceProfile& profile, Side proposers, Rng& order);

/// Side with the smaller dispersion proposes; men on a tie.
Side da_star_side(double phi_m, double phi_w);

struct DaStarResult {
    Matching matching;
    Side side_used = Side::Men;
    DaTrace trace;
    double phi_m = 0.0;
    double phi_w = 0.0;
};

DaStarResult da_star(const PreferenceProfile& profile, double phi_m, double phi_w);

/// DA* with both dispersions estimated from the lists against known references.
DaStarResult da_star_estimated(const PreferenceProfile& profile, std::span<const int> reference_m,
                               std::span<const int> reference_w);

}  // namespace smf
