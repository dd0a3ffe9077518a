#include <gtest/gtest.h>

#include "deferred_acceptance.hpp"
#include "error.hpp"
#include "support/oracle.hpp"

using namespace smf;
using namespace smf::testing;

TEST(DeferredAcceptance, Ex5BothSides) {
    const auto p = ex5_profile();
    const auto men = deferred_acceptance(p, Side::Men);
    EXPECT_EQ(to_one_based(men.matching), (std::vector<int>{2, 3, 1, 4, 5}));
    EXPECT_EQ(men.trace.proposal_count, 7);
    const auto women = deferred_acceptance(p, Side::Women);
    EXPECT_EQ(to_one_based(women.matching), (std::vector<int>{4, 2, 5, 3, 1}));
    EXPECT_EQ(women.trace.proposal_count, 12);
}

TEST(DeferredAcceptance, ProposerOptimalAgainstBruteForce) {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 6;
        const auto p = random_uniform_profile(n, gen);
        const auto stable = brute_force_stable(p);
        const auto men = deferred_acceptance(p, Side::Men).matching;
        const auto women = deferred_acceptance(p, Side::Women).matching;
        ASSERT_TRUE(is_stable(p, men));
        ASSERT_TRUE(is_stable(p, women));
        for (const auto& wife : stable) {
            for (int m = 0; m < n; ++m) {
                EXPECT_LE(p.man_pos(m, men.partner_of_man(m)), p.man_pos(m, wife[m]));
                EXPECT_GE(p.man_pos(m, women.partner_of_man(m)), p.man_pos(m, wife[m]));
            }
        }
    }
}

TEST(DeferredAcceptance, ProposalOrderDoesNotMatter) {
    std::mt19937_64 gen(23);
    Rng order(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = random_uniform_profile(3 + trial % 20, gen);
        for (Side side : {Side::Men, Side::Women}) {
            EXPECT_EQ(deferred_acceptance(p, side, order).matching, deferred_acceptance(p, side).matching);
        }
    }
}

TEST(DeferredAcceptance, ProposalsEqualProposerScore) {
    std::mt19937_64 gen(29);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = random_uniform_profile(4 + trial, gen);
        const auto r = deferred_acceptance(p, Side::Men);
        EXPECT_EQ(r.trace.proposal_count, welfare(p, r.matching).s_m);
    }
}

TEST(DaStar, SmallerDispersionProposes) {
    EXPECT_EQ(da_star_side(0.5, 0.7), Side::Men);
    EXPECT_EQ(da_star_side(0.9, 0.5), Side::Women);
    EXPECT_EQ(da_star_side(0.5, 0.5), Side::Men);
    EXPECT_THROW(da_star_side(-0.1, 0.5), Error);
    EXPECT_THROW(da_star_side(0.5, 1.5), Error);

    const auto p = ex5_profile();
    const auto r = da_star(p, 0.9, 0.2);
    EXPECT_EQ(r.side_used, Side::Women);
    EXPECT_EQ(r.matching, deferred_acceptance(p, Side::Women).matching);
}

TEST(DaStar, EstimatedSidesSeparateAtWideGap) {
    int men = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        const int n = 100;
        const auto p = generate_profile(n, MallowsParams::with_identity(n, 0.3, 0.9), rng);
        const auto ref = identity_permutation(n);
        const auto r = da_star_estimated(p, ref, ref);
        if (r.side_used == Side::Men) ++men;
        EXPECT_NEAR(r.phi_m, 0.3, 0.1);
        EXPECT_NEAR(r.phi_w, 0.9, 0.1);
    }
    EXPECT_GE(men, 99);
}
