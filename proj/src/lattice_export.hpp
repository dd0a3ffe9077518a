#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lattice.hpp"
#include "rotation_poset.hpp"

namespace smf {

struct LatticeStats {
    std::uint64_t size = 0;
    bool censored = false;
    // Rotation poset statistics; only set for complete lattices.
    std::optional<int> r;
    std::optional<int> h;
    std::optional<int> width;
    std::optional<std::uint64_t> downsets;
    std::optional<std::uint64_t> max_downsets_bound;
    /// downsets == size; false when counting ran out of budget.
    bool downset_check = false;
};

struct LatticeReport {
    StableLattice lattice;
    std::optional<RotationPoset> poset;
    LatticeStats stats;
};

/// Adds Hasse edges when missing, then poset statistics for complete
/// lattices.
LatticeReport analyse_lattice(const PreferenceProfile& profile, StableLattice lattice,
                              std::uint64_t max_downset_states = kDefaultDownsetStates);

/// Matchings as 1-based woman indices, edges as index pairs, rotations as
/// 1-based (man, woman) pairs, poset cover edges as rotation index pairs.
std::string lattice_to_json(const LatticeReport& report);

/// Hasse diagram, men-optimal at the top, edges labelled by rotation.
std::string lattice_to_dot(const LatticeReport& report);

}  // namespace smf
