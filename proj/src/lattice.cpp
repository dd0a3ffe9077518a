#include "lattice.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <string>

#include "deferred_acceptance.hpp"
#include "error.hpp"

namespace smf {

Rotation canonical_rotation(std::vector<ManWomanPair> pairs) {
    if (!pairs.empty()) {
        auto first = std::min_element(pairs.begin(), pairs.end(),
                                      [](const ManWomanPair& a, const ManWomanPair& b) { return a.man < b.man; });
        std::rotate(pairs.begin(), first, pairs.end());
    }
    return Rotation{std::move(pairs)};
}

std::uint64_t hash_matching(const Matching& mu) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (int w : mu.partners_of_men()) {
        h ^= static_cast<std::uint64_t>(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::size_t StableLattice::find(const Matching& mu) const {
    auto [lo, hi] = index_.equal_range(hash_matching(mu));
    for (auto it = lo; it != hi; ++it) {
        if (matchings[it->second] == mu) return it->second;
    }
    return kNoIndex;
}

std::pair<std::size_t, bool> StableLattice::insert(Matching mu) {
    const auto h = hash_matching(mu);
    auto [lo, hi] = index_.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
        if (matchings[it->second] == mu) return {it->second, false};
    }
    matchings.push_back(std::move(mu));
    index_.emplace(h, matchings.size() - 1);
    return {matchings.size() - 1, true};
}

bool dominates(const PreferenceProfile& profile, const Matching& mu1, const Matching& mu2) {
    if (mu1.size() != profile.size() || mu2.size() != profile.size()) {
        fail(ErrorCode::InvalidMatching, "dominates: matching size differs from profile");
    }
    bool strict = false;
    for (int m = 0; m < profile.size(); ++m) {
        const int a = profile.man_pos(m, mu1.partner_of_man(m));
        const int b = profile.man_pos(m, mu2.partner_of_man(m));
        if (a > b) return false;
        if (a < b) strict = true;
    }
    return strict;
}

StableBounds StableBounds::from_women_optimal(const PreferenceProfile& profile, const Matching& women_optimal) {
    const int n = profile.size();
    StableBounds b;
    b.man_worst_pos.resize(n);
    b.woman_best_pos.resize(n);
    for (int m = 0; m < n; ++m) b.man_worst_pos[m] = profile.man_pos(m, women_optimal.partner_of_man(m));
    for (int w = 0; w < n; ++w) b.woman_best_pos[w] = profile.woman_pos(w, women_optimal.partner_of_woman(w));
    return b;
}

namespace {

// Scratch state for repeated break-marriage attempts from one matching.
// `husband` is edited in place and rolled back through `journal`.
class BreakMarriage {
public:
    BreakMarriage(const PreferenceProfile& profile, const StableBounds* bounds) : profile_(profile), bounds_(bounds) {}

    void reset(const Matching& mu) {
        const auto h = mu.partners_of_women();
        husband_.assign(h.begin(), h.end());
        const auto wv = mu.partners_of_men();
        wife_.assign(wv.begin(), wv.end());
    }

    std::optional<Matching> run(int m) {
        const int n = profile_.size();
        const int freed = wife_[m];
        journal_.clear();
        set_husband(freed, -1);

        int proposer = m;
        int pos = profile_.man_pos(m, freed) + 1;
        bool success = false;
        while (true) {
            if (pos >= n || (bounds_ && pos > bounds_->man_worst_pos[proposer])) break;
            const int x = profile_.man_list(proposer)[pos];
            if (x == freed) {
                if (profile_.woman_prefers(freed, proposer, m)) {
                    if (bounds_ && profile_.woman_pos(freed, proposer) < bounds_->woman_best_pos[freed]) break;
                    set_husband(freed, proposer);
                    success = true;
                    break;
                }
                ++pos;
                continue;
            }
            const int current = husband_[x];
            if (profile_.woman_prefers(x, proposer, current)) {
                if (bounds_ && profile_.woman_pos(x, proposer) < bounds_->woman_best_pos[x]) break;
                set_husband(x, proposer);
                proposer = current;
                pos = profile_.man_pos(current, x) + 1;
            } else {
                ++pos;
            }
        }

        std::optional<Matching> out;
        if (success) {
            std::vector<int> wives = wife_;
            for (const auto& [w, old] : journal_) {
                (void)old;
                wives[husband_[w]] = w;
            }
            out.emplace(std::move(wives));
        }
        for (auto it = journal_.rbegin(); it != journal_.rend(); ++it) husband_[it->first] = it->second;
        return out;
    }

private:
    void set_husband(int w, int m) {
        journal_.emplace_back(w, husband_[w]);
        husband_[w] = m;
    }

    const PreferenceProfile& profile_;
    const StableBounds* bounds_;
    std::vector<int> husband_;
    std::vector<int> wife_;
    std::vector<std::pair<int, int>> journal_;
};

}  // namespace

std::optional<Matching> break_marriage(const PreferenceProfile& profile, const Matching& mu, int m,
                                       const StableBounds* bounds) {
    if (mu.size() != profile.size()) fail(ErrorCode::InvalidMatching, "break_marriage: size mismatch");
    if (m < 0 || m >= profile.size()) fail(ErrorCode::InvalidAgent, "break_marriage: man out of range");
    BreakMarriage bm(profile, bounds);
    bm.reset(mu);
    return bm.run(m);
}

StableLattice enumerate_lattice(const PreferenceProfile& profile, const LatticeOptions& options) {
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    const int n = profile.size();

    const Matching top = deferred_acceptance(profile, Side::Men).matching;
    const Matching bottom = deferred_acceptance(profile, Side::Women).matching;
    const auto bounds = StableBounds::from_women_optimal(profile, bottom);

    StableLattice lattice;
    lattice.n = n;
    lattice.top = lattice.insert(top).first;
    lattice.complete = true;

    const auto max_matchings = std::max<std::uint64_t>(options.budget.max_matchings, 1);
    BreakMarriage bm(profile, &bounds);
    bool stop = lattice.size() >= max_matchings && top != bottom;
    for (std::size_t i = 0; i < lattice.size() && !stop; ++i) {
        const Matching current = lattice.matchings[i];
        bm.reset(current);
        for (int m = 0; m < n && !stop; ++m) {
            if (current.partner_of_man(m) == bottom.partner_of_man(m)) continue;
            auto next = bm.run(m);
            if (!next) continue;
            if (lattice.insert(std::move(*next)).second && lattice.size() >= max_matchings) stop = true;
        }
        if (!stop && (i & 63) == 63) {
            const std::chrono::duration<double> elapsed = Clock::now() - start;
            if (elapsed.count() > options.budget.max_seconds) stop = true;
        }
    }
    if (stop) {
        // Hitting the cap exactly on the last matching still leaves the queue
        // unexplored, so a capped run is reported as incomplete.
        lattice.complete = false;
    }
    lattice.bottom = lattice.find(bottom);
    if (options.with_hasse) compute_hasse(profile, lattice);
    return lattice;
}

void compute_hasse(const PreferenceProfile& profile, StableLattice& lattice) {
    lattice.hasse_edges.clear();
    lattice.rotations.clear();
    std::map<Rotation, std::size_t> ids;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        const Matching current = lattice.matchings[i];
        for (auto& rho : detail::exposed_rotations_unchecked(profile, current)) {
            const std::size_t j = lattice.find(detail::apply_rotation_unchecked(current, rho));
            if (j == kNoIndex) continue;
            auto [it, fresh] = ids.emplace(rho, lattice.rotations.size());
            if (fresh) lattice.rotations.push_back(rho);
            lattice.hasse_edges.push_back({i, j, it->second});
        }
    }
    // Number rotations in canonical order so labels do not depend on the
    // enumeration order.
    std::vector<std::size_t> relabel(lattice.rotations.size());
    std::size_t next = 0;
    for (auto& [rho, id] : ids) relabel[id] = next++;
    lattice.rotations.clear();
    for (auto& [rho, id] : ids) lattice.rotations.push_back(rho);
    for (auto& e : lattice.hasse_edges) e.rotation = relabel[e.rotation];
    lattice.has_hasse = true;
}

namespace {

void require_stable(const PreferenceProfile& profile, const Matching& mu, const char* op) {
    if (!is_stable(profile, mu)) fail(ErrorCode::InvalidInput, std::string(op) + ": matching is not stable");
}

}  // namespace

Shortlists build_shortlists(const PreferenceProfile& profile, const Matching& mu) {
    require_stable(profile, mu, "build_shortlists");
    const int n = profile.size();
    Shortlists out;
    out.men.resize(n);
    out.women.resize(n);
    for (int m = 0; m < n; ++m) {
        const auto list = profile.man_list(m);
        for (int p = profile.man_pos(m, mu.partner_of_man(m)); p < n; ++p) {
            const int w = list[p];
            if (w == mu.partner_of_man(m) || profile.woman_prefers(w, m, mu.partner_of_woman(w))) {
                out.men[m].push_back(w);
            }
        }
    }
    for (int w = 0; w < n; ++w) {
        const auto list = profile.woman_list(w);
        const int last = profile.woman_pos(w, mu.partner_of_woman(w));
        out.women[w].assign(list.begin(), list.begin() + last + 1);
    }
    return out;
}

int next_woman(const PreferenceProfile& profile, const Matching& mu, int m) {
    const auto list = profile.man_list(m);
    for (int p = profile.man_pos(m, mu.partner_of_man(m)) + 1; p < profile.size(); ++p) {
        const int w = list[p];
        if (profile.woman_prefers(w, m, mu.partner_of_woman(w))) return w;
    }
    return -1;
}

namespace detail {

std::vector<Rotation> exposed_rotations_unchecked(const PreferenceProfile& profile, const Matching& mu) {
    const int n = profile.size();
    // 0 unseen, 1 on the current candidate chain, 2 consumed.
    std::vector<char> state(static_cast<std::size_t>(n), 0);
    std::vector<int> chain;
    std::vector<Rotation> out;
    for (int start = 0; start < n; ++start) {
        if (state[start] != 0) continue;
        chain.clear();
        int m = start;
        while (state[m] == 0) {
            state[m] = 1;
            chain.push_back(m);
            const int w = next_woman(profile, mu, m);
            if (w < 0) {
                m = -1;
                break;
            }
            m = mu.partner_of_woman(w);
        }
        if (m >= 0 && state[m] == 1) {
            auto first = std::find(chain.begin(), chain.end(), m);
            std::vector<ManWomanPair> pairs;
            for (auto it = first; it != chain.end(); ++it) pairs.push_back({*it, mu.partner_of_man(*it)});
            out.push_back(canonical_rotation(std::move(pairs)));
        }
        for (int c : chain) state[c] = 2;
    }
    return out;
}

Matching apply_rotation_unchecked(const Matching& mu, const Rotation& rho) {
    const auto current = mu.partners_of_men();
    std::vector<int> wives(current.begin(), current.end());
    const std::size_t k = rho.pairs.size();
    for (std::size_t i = 0; i < k; ++i) wives[rho.pairs[i].man] = rho.pairs[(i + 1) % k].woman;
    return Matching(std::move(wives));
}

}  // namespace detail

std::vector<Rotation> find_exposed_rotations(const PreferenceProfile& profile, const Matching& mu) {
    require_stable(profile, mu, "find_exposed_rotations");
    return detail::exposed_rotations_unchecked(profile, mu);
}

Matching eliminate_rotation(const PreferenceProfile& profile, const Matching& mu, const Rotation& rho) {
    if (mu.size() != profile.size()) fail(ErrorCode::InvalidMatching, "eliminate_rotation: size mismatch");
    const int n = profile.size();
    const std::size_t k = rho.pairs.size();
    if (k < 2) fail(ErrorCode::RotationNotExposed, "rotation needs at least two pairs");
    std::vector<char> seen_m(static_cast<std::size_t>(n), 0), seen_w(static_cast<std::size_t>(n), 0);
    for (const auto& [m, w] : rho.pairs) {
        if (m < 0 || m >= n || w < 0 || w >= n) fail(ErrorCode::InvalidAgent, "rotation agent out of range");
        if (seen_m[m]++ || seen_w[w]++) fail(ErrorCode::RotationNotExposed, "rotation repeats an agent");
        if (mu.partner_of_man(m) != w) fail(ErrorCode::RotationNotExposed, "rotation pair is not in the matching");
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (next_woman(profile, mu, rho.pairs[i].man) != rho.pairs[(i + 1) % k].woman) {
            fail(ErrorCode::RotationNotExposed, "rotation is not exposed in the matching");
        }
    }
    return detail::apply_rotation_unchecked(mu, rho);
}

}  // namespace smf
