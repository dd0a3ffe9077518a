#include "rotation_poset.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <string>
#include <unordered_map>

#include "error.hpp"

namespace smf {

Poset Poset::from_relations(int size, const std::vector<std::pair<int, int>>& relations) {
    if (size < 0) fail(ErrorCode::InvalidInput, "poset size must be nonnegative");
    Poset p;
    p.size_ = size;
    p.less_.assign(static_cast<std::size_t>(size) * size, 0);
    for (auto [a, b] : relations) {
        if (a < 0 || b < 0 || a >= size || b >= size) fail(ErrorCode::InvalidInput, "poset relation out of range");
        p.less_[static_cast<std::size_t>(a) * size + b] = 1;
    }
    for (int k = 0; k < size; ++k) {
        for (int i = 0; i < size; ++i) {
            if (!p.less(i, k)) continue;
            for (int j = 0; j < size; ++j) {
                if (p.less(k, j)) p.less_[static_cast<std::size_t>(i) * size + j] = 1;
            }
        }
    }
    for (int i = 0; i < size; ++i) {
        if (p.less(i, i)) fail(ErrorCode::InvalidInput, "precedence relation has a cycle");
    }
    return p;
}

std::vector<std::pair<int, int>> Poset::cover_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size_; ++a) {
        for (int b = 0; b < size_; ++b) {
            if (!less(a, b)) continue;
            bool covered = true;
            for (int c = 0; c < size_ && covered; ++c) {
                if (less(a, c) && less(c, b)) covered = false;
            }
            if (covered) out.emplace_back(a, b);
        }
    }
    return out;
}

int Poset::height() const {
    // Predecessor count gives a topological order of a closed relation.
    std::vector<int> order(static_cast<std::size_t>(size_));
    std::vector<int> below(static_cast<std::size_t>(size_), 0);
    for (int i = 0; i < size_; ++i) {
        order[i] = i;
        for (int j = 0; j < size_; ++j) below[i] += less(j, i);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) { return below[a] < below[b]; });
    std::vector<int> chain(static_cast<std::size_t>(size_), 1);
    int best = 0;
    for (int i : order) {
        for (int j = 0; j < size_; ++j) {
            if (less(j, i)) chain[i] = std::max(chain[i], chain[j] + 1);
        }
        best = std::max(best, chain[i]);
    }
    return best;
}

int Poset::width() const {
    // Minimum chain cover = size - maximum matching in the comparability
    // bipartite graph; equals the largest antichain.
    std::vector<int> match_right(static_cast<std::size_t>(size_), -1);
    std::vector<char> seen;
    auto augment = [&](auto&& self, int a) -> bool {
        for (int b = 0; b < size_; ++b) {
            if (!less(a, b) || seen[b]) continue;
            seen[b] = 1;
            if (match_right[b] < 0 || self(self, match_right[b])) {
                match_right[b] = a;
                return true;
            }
        }
        return false;
    };
    int matched = 0;
    for (int a = 0; a < size_; ++a) {
        seen.assign(static_cast<std::size_t>(size_), 0);
        if (augment(augment, a)) ++matched;
    }
    return size_ - matched;
}

namespace {

using Words = std::vector<std::uint64_t>;

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

void set_bit(Words& w, std::size_t i) { w[i / 64] |= std::uint64_t{1} << (i % 64); }
bool test_bit(const Words& w, std::size_t i) { return (w[i / 64] >> (i % 64)) & 1U; }

bool is_subset(const Words& a, const Words& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] & ~b[i]) return false;
    }
    return true;
}

}  // namespace

RotationPoset build_rotation_poset(const PreferenceProfile& profile, const StableLattice& lattice) {
    if (!lattice.complete) fail(ErrorCode::InvalidInput, "rotation poset needs a complete lattice");

    const StableLattice* source = &lattice;
    StableLattice with_edges;
    if (!lattice.has_hasse) {
        with_edges = lattice;
        compute_hasse(profile, with_edges);
        source = &with_edges;
    }
    const auto& lat = *source;
    const std::size_t count = lat.size();
    const std::size_t r = lat.rotations.size();

    // Elimination set of every matching, by breadth-first search from the top.
    std::vector<std::vector<std::size_t>> out_edges(count);
    for (std::size_t e = 0; e < lat.hasse_edges.size(); ++e) out_edges[lat.hasse_edges[e].from].push_back(e);
    std::vector<Words> eliminated(count, Words(word_count(r), 0));
    std::vector<char> reached(count, 0);
    std::deque<std::size_t> queue{lat.top};
    reached[lat.top] = 1;
    while (!queue.empty()) {
        const std::size_t i = queue.front();
        queue.pop_front();
        for (std::size_t e : out_edges[i]) {
            const auto& edge = lat.hasse_edges[e];
            if (reached[edge.to]) continue;
            reached[edge.to] = 1;
            eliminated[edge.to] = eliminated[i];
            set_bit(eliminated[edge.to], edge.rotation);
            queue.push_back(edge.to);
        }
    }
    if (std::find(reached.begin(), reached.end(), 0) != reached.end()) {
        fail(ErrorCode::InvalidInput, "lattice has matchings unreachable from the top");
    }

    // members[rho] = matchings whose elimination set contains rho.
    std::vector<Words> members(r, Words(word_count(count), 0));
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t k = 0; k < r; ++k) {
            if (test_bit(eliminated[i], k)) set_bit(members[k], i);
        }
    }
    std::vector<std::pair<int, int>> relations;
    for (std::size_t a = 0; a < r; ++a) {
        for (std::size_t b = 0; b < r; ++b) {
            if (a != b && is_subset(members[b], members[a]) && members[a] != members[b]) {
                relations.emplace_back(static_cast<int>(a), static_cast<int>(b));
            }
        }
    }

    RotationPoset poset;
    poset.rotations = lat.rotations;
    poset.order = Poset::from_relations(static_cast<int>(r), relations);
    poset.precedence_edges = poset.order.cover_edges();
    return poset;
}

std::uint64_t max_downsets_bound(int r, int h) {
    if (r < 0 || h < 0 || h > r) {
        fail(ErrorCode::InvalidInput, "max_downsets_bound needs 0 <= h <= r (got r=" + std::to_string(r) +
                                          ", h=" + std::to_string(h) + ")");
    }
    if (r - h >= 63) fail(ErrorCode::InvalidInput, "max_downsets_bound overflows 64 bits");
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(std::uint64_t{1} << (r - h), static_cast<std::uint64_t>(h) + 1, &out)) {
        fail(ErrorCode::InvalidInput, "max_downsets_bound overflows 64 bits");
    }
    return out;
}

namespace {

struct WordsHash {
    std::size_t operator()(const Words& w) const {
        std::uint64_t h = 0x84222325cbf29ce4ULL;
        for (auto x : w) h = (h ^ x) * 0x100000001b3ULL + (h >> 29);
        return static_cast<std::size_t>(h);
    }
};

class DownsetCounter {
public:
    DownsetCounter(const Poset& poset, std::uint64_t max_states)
        : poset_(poset), words_(word_count(static_cast<std::size_t>(poset.size()))), max_states_(max_states) {}

    std::uint64_t count(const Words& set) {
        if (std::all_of(set.begin(), set.end(), [](std::uint64_t x) { return x == 0; })) return 1;
        if (auto it = memo_.find(set); it != memo_.end()) return it->second;

        const auto members = elements(set);
        std::uint64_t result = 0;
        auto parts = components(members);
        if (parts.size() > 1) {
            result = 1;
            for (const auto& part : parts) result = checked_mul(result, count(part));
        } else {
            // Branch on the element comparable to the most others: downsets
            // avoiding it live in set minus its up-closure, downsets holding
            // it correspond to downsets of set minus its down-closure.
            int pivot = members.front();
            int best = -1;
            for (int x : members) {
                int deg = 0;
                for (int y : members) deg += poset_.comparable(x, y);
                if (deg > best) {
                    best = deg;
                    pivot = x;
                }
            }
            Words without_up = set, without_down = set;
            for (int y : members) {
                if (y == pivot || poset_.less(pivot, y)) clear_bit(without_up, y);
                if (y == pivot || poset_.less(y, pivot)) clear_bit(without_down, y);
            }
            result = checked_add(count(without_up), count(without_down));
        }
        if (memo_.size() >= max_states_) {
            throw BudgetExceeded("downset counting exceeded its state budget", memo_.size());
        }
        memo_.emplace(set, result);
        return result;
    }

    Words full() const {
        Words w(words_, 0);
        for (int i = 0; i < poset_.size(); ++i) set_bit(w, static_cast<std::size_t>(i));
        return w;
    }

private:
    static void clear_bit(Words& w, int i) { w[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

    std::vector<int> elements(const Words& set) const {
        std::vector<int> out;
        for (std::size_t k = 0; k < set.size(); ++k) {
            for (std::uint64_t x = set[k]; x; x &= x - 1) out.push_back(static_cast<int>(k * 64 + std::countr_zero(x)));
        }
        return out;
    }

    std::vector<Words> components(const std::vector<int>& members) const {
        std::vector<int> label(members.size(), -1);
        std::vector<Words> out;
        for (std::size_t s = 0; s < members.size(); ++s) {
            if (label[s] >= 0) continue;
            Words part(words_, 0);
            std::vector<std::size_t> stack{s};
            label[s] = static_cast<int>(out.size());
            while (!stack.empty()) {
                const std::size_t i = stack.back();
                stack.pop_back();
                set_bit(part, static_cast<std::size_t>(members[i]));
                for (std::size_t j = 0; j < members.size(); ++j) {
                    if (label[j] < 0 && poset_.comparable(members[i], members[j])) {
                        label[j] = label[s];
                        stack.push_back(j);
                    }
                }
            }
            out.push_back(std::move(part));
        }
        return out;
    }

    std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t out;
        if (__builtin_add_overflow(a, b, &out)) throw BudgetExceeded("downset count exceeds 64 bits", memo_.size());
        return out;
    }
    std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t out;
        if (__builtin_mul_overflow(a, b, &out)) throw BudgetExceeded("downset count exceeds 64 bits", memo_.size());
        return out;
    }

    const Poset& poset_;
    std::size_t words_;
    std::uint64_t max_states_;
    std::unordered_map<Words, std::uint64_t, WordsHash> memo_;
};

}  // namespace

std::uint64_t count_downsets(const Poset& poset, std::uint64_t max_states) {
    DownsetCounter counter(poset, max_states);
    return counter.count(counter.full());
}

}  // namespace smf
