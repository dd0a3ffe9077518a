#include "deferred_acceptance.hpp"

#include <string>
#include <vector>

#include "error.hpp"

namespace smf {

namespace {

// Men propose. `pick` returns the index into `free` of the next proposer.
template <class Pick>
DaResult run_men_proposing(const PreferenceProfile& profile, Pick&& pick) {
    const int n = profile.size();
    std::vector<int> next(static_cast<std::size_t>(n), 0);
    std::vector<int> husband(static_cast<std::size_t>(n), -1);
    std::vector<int> free;
    free.reserve(n);
    for (int m = n - 1; m >= 0; --m) free.push_back(m);

    DaTrace trace;
    while (!free.empty()) {
        const std::size_t slot = pick(free.size());
        const int m = free[slot];
        const int w = profile.man_list(m)[next[m]++];
        ++trace.proposal_count;
        const int current = husband[w];
        if (current == -1) {
            husband[w] = m;
            free[slot] = free.back();
            free.pop_back();
        } else if (profile.woman_prefers(w, m, current)) {
            husband[w] = m;
            free[slot] = current;
        }
    }
    trace.rounds = trace.proposal_count;

    std::vector<int> wife(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) wife[husband[w]] = w;
    return {Matching(std::move(wife)), trace};
}

template <class Pick>
DaResult run(const PreferenceProfile& profile, Side proposers, Pick&& pick) {
    if (proposers == Side::Men) return run_men_proposing(profile, pick);
    auto r = run_men_proposing(profile.swapped(), pick);
    return {r.matching.swapped(), r.trace};
}

}  // namespace

DaResult deferred_acceptance(const PreferenceProfile& profile, Side proposers) {
    return run(profile, proposers, [](std::size_t size) { return size - 1; });
}

DaResult deferred_acceptance(const PreferenceProfile& profile, Side proposers, Rng& order) {
    return run(profile, proposers, [&order](std::size_t size) { return static_cast<std::size_t>(order.below(size)); });
}

Side da_star_side(double phi_m, double phi_w) {
    if (!(phi_m >= 0.0 && phi_m <= 1.0) || !(phi_w >= 0.0 && phi_w <= 1.0)) {
        fail(ErrorCode::InvalidInput, "dispersion parameters must lie in [0, 1]");
    }
    return phi_w < phi_m ? Side::Women : Side::Men;
}

DaStarResult da_star(const PreferenceProfile& profile, double phi_m, double phi_w) {
    const Side side = da_star_side(phi_m, phi_w);
    auto r = deferred_acceptance(profile, side);
    return {std::move(r.matching), side, r.trace, phi_m, phi_w};
}

DaStarResult da_star_estimated(const PreferenceProfile& profile, std::span<const int> reference_m,
                               std::span<const int> reference_w) {
    const int n = profile.size();
    if (static_cast<int>(reference_m.size()) != n || static_cast<int>(reference_w.size()) != n) {
        fail(ErrorCode::InvalidInput, "reference rankings must have " + std::to_string(n) + " entries");
    }
    const auto men = profile.men_prefs();
    const auto women = profile.women_prefs();
    const double phi_m = estimate_phi(men, reference_m);
    const double phi_w = estimate_phi(women, reference_w);
    return da_star(profile, phi_m, phi_w);
}

}  // namespace smf
