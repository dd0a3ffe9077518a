#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "core.hpp"

namespace smf {

/// Cyclic sequence of matched pairs (m_1,w_1)...(m_k,w_k). Eliminating it
/// moves every m_i to w_{i+1}. Stored rotated so the smallest man is first.
struct Rotation {
    std::vector<ManWomanPair> pairs;

    bool operator==(const Rotation&) const = default;
    auto operator<=>(const Rotation&) const = default;
};

/// Rotate a cycle so the smallest man comes first.
Rotation canonical_rotation(std::vector<ManWomanPair> pairs);

struct EnumerationBudget {
    std::uint64_t max_matchings = std::uint64_t{1} << 20;
    double max_seconds = 300.0;
};

struct LatticeOptions {
    EnumerationBudget budget;
    /// Also compute immediate-dominance edges labelled by rotations.
    bool with_hasse = true;
};

/// mu -> mu' where mu' = eliminate_rotation(mu, rotations[rotation]).
struct HasseEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    std::size_t rotation = 0;

    bool operator==(const HasseEdge&) const = default;
};

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

/// Every stable matching of a profile (or a prefix of them when a budget
/// stopped enumeration). matchings[top] is men-optimal; matchings[bottom]
/// is women-optimal when the enumeration completed.
class StableLattice {
public:
    int n = 0;
    std::vector<Matching> matchings;
    std::vector<HasseEdge> hasse_edges;
    std::vector<Rotation> rotations;
    std::size_t top = 0;
    std::size_t bottom = kNoIndex;
    bool complete = false;
    bool has_hasse = false;

    std::size_t size() const { return matchings.size(); }

    /// Index of mu, or kNoIndex.
    std::size_t find(const Matching& mu) const;
    /// Appends mu unless already present; returns its index.
    std::pair<std::size_t, bool> insert(Matching mu);

private:
    std::unordered_multimap<std::uint64_t, std::size_t> index_;
};

std::uint64_t hash_matching(const Matching& mu);

/// Every man weakly better in mu1 than in mu2 and at least one strictly.
bool dominates(const PreferenceProfile& profile, const Matching& mu1, const Matching& mu2);

/// Positions bounding each agent's stable partners: a man never goes below
/// his women-optimal partner, a woman never above hers.
struct StableBounds {
    std::vector<int> man_worst_pos;
    std::vector<int> woman_best_pos;

    static StableBounds from_women_optimal(const PreferenceProfile& profile, const Matching& women_optimal);
};

/// Frees `m` from his partner w in the stable matching mu and replays
/// proposals: m and every displaced man continue down their lists, each
/// woman accepts a man she prefers to her current partner and w accepts only
/// men she prefers to m. Succeeds when w accepts; fails when a man runs out
/// of stable candidates. With `bounds`, chains that must end unstable are
/// cut early.
std::optional<Matching> break_marriage(const PreferenceProfile& profile, const Matching& mu, int m,
                                       const StableBounds* bounds = nullptr);

/// All stable matchings by recursive break-marriage from the men-optimal
/// matching with global de-duplication. On budget exhaustion the lattice is
/// returned with complete == false.
StableLattice enumerate_lattice(const PreferenceProfile& profile, const LatticeOptions& options = {});

/// Fill lattice.hasse_edges and lattice.rotations from exposed rotations.
void compute_hasse(const PreferenceProfile& profile, StableLattice& lattice);

/// Reduced lists relative to a stable matching: each man keeps his partner
/// and the later women who prefer him to their partner; each woman keeps the
/// men up to and including her partner.
struct Shortlists {
    std::vector<std::vector<int>> men;
    std::vector<std::vector<int>> women;
};

Shortlists build_shortlists(const PreferenceProfile& profile, const Matching& mu);

/// First woman after mu(m) in m's list who prefers m to her partner, or -1.
int next_woman(const PreferenceProfile& profile, const Matching& mu, int m);

/// Rotations exposed in a stable matching; empty iff mu is women-optimal.
/// Throws InvalidInput when mu is unstable.
std::vector<Rotation> find_exposed_rotations(const PreferenceProfile& profile, const Matching& mu);

/// Throws RotationNotExposed when rho is not exposed in mu.
Matching eliminate_rotation(const PreferenceProfile& profile, const Matching& mu, const Rotation& rho);

namespace detail {
// Callers guarantee mu is stable.
std::vector<Rotation> exposed_rotations_unchecked(const PreferenceProfile& profile, const Matching& mu);
Matching apply_rotation_unchecked(const Matching& mu, const Rotation& rho);
}  // namespace detail

}  // namespace smf
