#include "fairness.hpp"

#include <algorithm>
#include <unordered_set>
#include <vector>

#include "deferred_acceptance.hpp"
#include "error.hpp"

namespace smf {

const char* to_string(LemmaCase c) {
    switch (c) {
        case LemmaCase::MenOptimalIsSexEqual:
            return "men_optimal";
        case LemmaCase::WomenOptimalIsSexEqual:
            return "women_optimal";
        case LemmaCase::Interior:
            return "interior";
    }
    return "unknown";
}

Classification classify_instance(const PreferenceProfile& profile) {
    Classification c;
    c.men_optimal = deferred_acceptance(profile, Side::Men).matching;
    c.women_optimal = deferred_acceptance(profile, Side::Women).matching;
    c.men_optimal_scores = welfare(profile, c.men_optimal);
    c.women_optimal_scores = welfare(profile, c.women_optimal);
    if (c.men_optimal_scores.s_m >= c.men_optimal_scores.s_w) {
        c.lemma_case = LemmaCase::MenOptimalIsSexEqual;
    } else if (c.women_optimal_scores.s_m <= c.women_optimal_scores.s_w) {
        c.lemma_case = LemmaCase::WomenOptimalIsSexEqual;
    } else {
        c.lemma_case = LemmaCase::Interior;
    }
    return c;
}

namespace {

SearchResult make_result(Matching mu, WelfareScores s, bool optimal, std::uint64_t visited) {
    SearchResult r;
    r.matching = std::move(mu);
    r.scores = s;
    r.cost = sex_equality_cost(s);
    r.optimal = optimal;
    r.visited = visited;
    return r;
}

bool better(std::int64_t cost, const Matching& mu, std::int64_t best_cost, const Matching& best) {
    return cost < best_cost || (cost == best_cost && mu < best);
}

}  // namespace

SearchResult sex_equal_over(const PreferenceProfile& profile, const StableLattice& lattice) {
    if (lattice.matchings.empty()) fail(ErrorCode::InvalidInput, "empty lattice");
    std::size_t best = 0;
    WelfareScores best_scores = welfare(profile, lattice.matchings[0]);
    std::int64_t best_cost = sex_equality_cost(best_scores);
    for (std::size_t i = 1; i < lattice.size(); ++i) {
        const auto s = welfare(profile, lattice.matchings[i]);
        const auto c = sex_equality_cost(s);
        if (better(c, lattice.matchings[i], best_cost, lattice.matchings[best])) {
            best = i;
            best_cost = c;
            best_scores = s;
        }
    }
    return make_result(lattice.matchings[best], best_scores, lattice.complete, lattice.size());
}

SearchResult sex_equal_exhaustive(const PreferenceProfile& profile, const EnumerationBudget& budget) {
    auto c = classify_instance(profile);
    if (c.lemma_case == LemmaCase::MenOptimalIsSexEqual) {
        return make_result(std::move(c.men_optimal), c.men_optimal_scores, true, 2);
    }
    if (c.lemma_case == LemmaCase::WomenOptimalIsSexEqual) {
        return make_result(std::move(c.women_optimal), c.women_optimal_scores, true, 2);
    }
    LatticeOptions options;
    options.budget = budget;
    options.with_hasse = false;
    return sex_equal_over(profile, enumerate_lattice(profile, options));
}

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (int x : v) h = (h ^ static_cast<std::uint64_t>(x)) * 0x100000001b3ULL;
        return static_cast<std::size_t>(h);
    }
};

struct Node {
    Matching matching;  // in original orientation
    WelfareScores scores;
    std::int64_t cost;
};

}  // namespace

SearchResult ibils_search(const PreferenceProfile& profile, const IbilsOptions& options) {
    if (options.depth_limit < 0 || options.width_limit < 1) {
        fail(ErrorCode::InvalidInput, "ibils_search needs depth >= 1 and width >= 1");
    }
    const int depth = options.depth_limit == 0 ? 2 * profile.size() : options.depth_limit;
    const auto width = static_cast<std::size_t>(options.width_limit);
    const PreferenceProfile mirrored = profile.swapped();

    std::unordered_set<std::vector<int>, VecHash> visited;
    auto make_node = [&](Matching mu) {
        const auto s = welfare(profile, mu);
        return Node{std::move(mu), s, sex_equality_cost(s)};
    };
    auto remember = [&](const Matching& mu) {
        const auto p = mu.partners_of_men();
        return visited.emplace(p.begin(), p.end()).second;
    };

    Node top = make_node(deferred_acceptance(profile, Side::Men).matching);
    Node bottom = make_node(deferred_acceptance(profile, Side::Women).matching);
    remember(top.matching);
    remember(bottom.matching);

    Node best = better(bottom.cost, bottom.matching, top.cost, top.matching) ? bottom : top;
    auto consider = [&](const Node& node) {
        if (better(node.cost, node.matching, best.cost, best.matching)) best = node;
    };

    // Moving down raises S_M - S_W; a downward node already at or past zero
    // has no descendant with lower cost, and symmetrically upwards.
    auto expandable_down = [](const Node& x) { return x.scores.s_m < x.scores.s_w; };
    auto expandable_up = [](const Node& x) { return x.scores.s_m > x.scores.s_w; };

    std::vector<Node> down, up;
    if (expandable_down(top)) down.push_back(top);
    if (expandable_up(bottom)) up.push_back(bottom);

    auto by_cost = [](const Node& a, const Node& b) {
        return a.cost < b.cost || (a.cost == b.cost && a.matching < b.matching);
    };
    auto advance = [&](const std::vector<Node>& frontier, bool downward) {
        std::vector<Node> next;
        for (const Node& x : frontier) {
            const Matching oriented = downward ? x.matching : x.matching.swapped();
            const PreferenceProfile& market = downward ? profile : mirrored;
            for (const auto& rho : detail::exposed_rotations_unchecked(market, oriented)) {
                Matching child = detail::apply_rotation_unchecked(oriented, rho);
                if (!downward) child = child.swapped();
                if (!remember(child)) continue;
                Node node = make_node(std::move(child));
                consider(node);
                if (downward ? expandable_down(node) : expandable_up(node)) next.push_back(std::move(node));
            }
        }
        std::sort(next.begin(), next.end(), by_cost);
        if (next.size() > width) next.resize(width);
        return next;
    };

    for (int level = 0; level < depth && best.cost > 0 && (!down.empty() || !up.empty()); ++level) {
        if (!down.empty()) down = advance(down, true);
        if (best.cost == 0) break;
        if (!up.empty()) up = advance(up, false);
    }
    return make_result(std::move(best.matching), best.scores, best.cost == 0, visited.size());
}

WelfareGap welfare_gap(const PreferenceProfile& profile) {
    const auto top = welfare(profile, deferred_acceptance(profile, Side::Men).matching);
    const auto bottom = welfare(profile, deferred_acceptance(profile, Side::Women).matching);
    return {bottom.s_m - top.s_m, top.s_w - bottom.s_w};
}

}  // namespace smf
