#include <gtest/gtest.h>

#include "core.hpp"
#include "error.hpp"
#include "support/oracle.hpp"

using namespace smf;
using namespace smf::testing;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::Degenerate;
}

}  // namespace

TEST(Profile, RejectsMalformedLists) {
    EXPECT_EQ(code_of([] { PreferenceProfile({{0, 0}, {1, 0}}, {{0, 1}, {1, 0}}); }), ErrorCode::InvalidInput);
    EXPECT_EQ(code_of([] { PreferenceProfile({{0, 1}}, {{0, 1}, {1, 0}}); }), ErrorCode::InvalidInput);
    EXPECT_EQ(code_of([] { PreferenceProfile({{0, 2}, {1, 0}}, {{0, 1}, {1, 0}}); }), ErrorCode::InvalidInput);
    EXPECT_EQ(code_of([] { PreferenceProfile({{0, 1}, {1}}, {{0, 1}, {1, 0}}); }), ErrorCode::InvalidInput);
}

TEST(Profile, RankIsOneBasedAndChecked) {
    const auto p = ex5_profile();
    // rank(of, in_list_of)
    EXPECT_EQ(rank(p, woman(1), man(0)), 1);
    EXPECT_EQ(rank(p, woman(2), man(0)), 5);
    EXPECT_EQ(rank(p, man(0), woman(4)), 1);
    EXPECT_EQ(rank(p, man(2), woman(0)), 5);
    EXPECT_EQ(code_of([&] { rank(p, man(0), man(1)); }), ErrorCode::InvalidAgent);
    EXPECT_EQ(code_of([&] { rank(p, man(5), woman(1)); }), ErrorCode::InvalidAgent);
    EXPECT_EQ(code_of([&] { rank(p, woman(0), man(-1)); }), ErrorCode::InvalidAgent);
}

TEST(Profile, SwapIsAnInvolution) {
    const auto p = ex5_profile();
    EXPECT_EQ(p.swapped().swapped(), p);
    EXPECT_EQ(p.swapped().men_prefs(), p.women_prefs());
}

TEST(Matching, RejectsNonPermutations) {
    EXPECT_EQ(code_of([] { Matching({0, 0, 1}); }), ErrorCode::InvalidMatching);
    EXPECT_EQ(code_of([] { Matching({0, 3, 1}); }), ErrorCode::InvalidMatching);
}

TEST(Matching, InverseIsConsistent) {
    const auto mu = from_one_based({2, 3, 1, 4, 5});
    for (int m = 0; m < 5; ++m) EXPECT_EQ(mu.partner_of_woman(mu.partner_of_man(m)), m);
    EXPECT_EQ(mu.swapped().swapped(), mu);
}

TEST(Welfare, ExtremeMatchingsOfEx5) {
    const auto p = ex5_profile();
    const auto top = welfare(p, from_one_based({2, 3, 1, 4, 5}));
    EXPECT_EQ(top.s_m, 7);
    EXPECT_EQ(top.s_w, 18);
    EXPECT_EQ(sex_equality_cost(top), 11);
    EXPECT_EQ(egalitarian_cost(top), 25);
    const auto bottom = welfare(p, from_one_based({4, 2, 5, 3, 1}));
    EXPECT_EQ(bottom.s_m, 13);
    EXPECT_EQ(bottom.s_w, 12);
    EXPECT_EQ(sex_equality_cost(bottom), 1);
}

TEST(Stability, BlockingPairsAgreeWithOracle) {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + trial % 6;
        const auto p = random_uniform_profile(n, gen);
        const Matching mu(random_permutation(n, gen));
        const auto pairs = find_blocking_pairs(p, mu);
        EXPECT_EQ(pairs.empty(), oracle_is_stable(p.men_prefs(), p.women_prefs(), wives(mu)));
        EXPECT_TRUE(std::is_sorted(pairs.begin(), pairs.end(), [](auto a, auto b) {
            return std::pair(a.man, a.woman) < std::pair(b.man, b.woman);
        }));
        for (const auto& [m, w] : pairs) {
            EXPECT_TRUE(p.man_prefers(m, w, mu.partner_of_man(m)));
            EXPECT_TRUE(p.woman_prefers(w, m, mu.partner_of_woman(w)));
        }
    }
}

TEST(Stability, Ex5IdentityMatchingIsBlocked) {
    const auto p = ex5_profile();
    const auto mu = Matching::identity(5);
    EXPECT_FALSE(is_stable(p, mu));
    EXPECT_TRUE(is_stable(p, from_one_based({4, 2, 5, 3, 1})));
}
