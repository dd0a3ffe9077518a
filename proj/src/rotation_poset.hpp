#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lattice.hpp"

namespace smf {

/// Finite strict partial order on 0..size-1 stored as its transitive closure.
class Poset {
public:
    Poset() = default;

    /// Closure of the given relations (a, b) meaning a precedes b.
    /// Throws InvalidInput on a cycle or out-of-range element.
    static Poset from_relations(int size, const std::vector<std::pair<int, int>>& relations);

    int size() const { return size_; }
    bool less(int a, int b) const { return less_[static_cast<std::size_t>(a) * size_ + b] != 0; }
    bool comparable(int a, int b) const { return less(a, b) || less(b, a); }

    /// Covering pairs (transitive reduction).
    std::vector<std::pair<int, int>> cover_edges() const;

    /// Number of elements in a longest chain.
    int height() const;
    /// Size of a largest antichain (Dilworth, via bipartite matching).
    int width() const;

private:
    int size_ = 0;
    std::vector<char> less_;
};

struct RotationPoset {
    std::vector<Rotation> rotations;
    Poset order;
    std::vector<std::pair<int, int>> precedence_edges;

    std::size_t r() const { return rotations.size(); }
    int height() const { return order.height(); }
    int width() const { return order.width(); }
};

/// Rotations of a complete lattice ordered by containment of elimination
/// sets: rho precedes rho' when every matching whose elimination set holds
/// rho' also holds rho. Throws InvalidInput on an incomplete lattice.
RotationPoset build_rotation_poset(const PreferenceProfile& profile, const StableLattice& lattice);

/// 2^(r-h) * (h+1). Throws InvalidInput when h > r or the value overflows.
std::uint64_t max_downsets_bound(int r, int h);

inline constexpr std::uint64_t kDefaultDownsetStates = std::uint64_t{1} << 22;

/// Exact number of downsets (order ideals). Splits into connected
/// components and branches on one element at a time with memoisation.
/// Throws BudgetExceeded after `max_states` memo entries or on overflow.
std::uint64_t count_downsets(const Poset& poset, std::uint64_t max_states = kDefaultDownsetStates);

}  // namespace smf
