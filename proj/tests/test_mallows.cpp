#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "error.hpp"
#include "mallows.hpp"
#include "support/oracle.hpp"

using namespace smf;
using namespace smf::testing;

TEST(Kendall, MatchesQuadraticOracle) {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + trial % 40;
        const auto a = random_permutation(n, gen);
        const auto b = random_permutation(n, gen);
        EXPECT_EQ(kendall_tau(a, b), oracle_kendall(a, b));
    }
}

TEST(Kendall, IsAMetric) {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 12;
        const auto a = random_permutation(n, gen);
        const auto b = random_permutation(n, gen);
        const auto c = random_permutation(n, gen);
        EXPECT_EQ(kendall_tau(a, a), 0);
        EXPECT_EQ(kendall_tau(a, b), kendall_tau(b, a));
        EXPECT_LE(kendall_tau(a, c), kendall_tau(a, b) + kendall_tau(b, c));
        EXPECT_LE(kendall_tau(a, b), n * (n - 1) / 2);
    }
}

TEST(Kendall, ReverseIsMaximal) {
    std::vector<int> id = identity_permutation(6), rev(id.rbegin(), id.rend());
    EXPECT_EQ(kendall_tau(id, rev), 15);
}

TEST(Kendall, RejectsInvalidInput) {
    const std::vector<int> a{0, 1, 2}, b{0, 1}, c{0, 0, 1};
    EXPECT_THROW(kendall_tau(a, b), Error);
    EXPECT_THROW(kendall_tau(a, c), Error);
}

TEST(MallowsProbability, SumsToOne) {
    for (int n = 1; n <= 6; ++n) {
        for (double phi : {0.1, 0.3, 0.5, 0.9, 1.0}) {
            auto pi = identity_permutation(n);
            const auto ref = identity_permutation(n);
            double total = 0.0;
            do {
                total += mallows_probability(pi, ref, phi);
            } while (std::next_permutation(pi.begin(), pi.end()));
            EXPECT_NEAR(total, 1.0, 1e-9) << "n=" << n << " phi=" << phi;
        }
    }
}

TEST(MallowsProbability, UniformAtPhiOne) {
    const std::vector<int> pi{2, 0, 3, 1}, ref{0, 1, 2, 3};
    EXPECT_NEAR(mallows_probability(pi, ref, 1.0), 1.0 / 24.0, 1e-12);
}

TEST(MallowsProbability, PhiZeroIsDegenerate) {
    const auto ref = identity_permutation(3);
    try {
        mallows_probability(ref, ref, 0.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Degenerate);
    }
}

TEST(Sampler, PhiZeroReproducesReference) {
    Rng rng(1);
    const std::vector<int> ref{3, 1, 4, 0, 2};
    for (int i = 0; i < 20; ++i) EXPECT_EQ(sample_permutation(ref, 0.0, rng), Permutation(ref.begin(), ref.end()));
}

TEST(Sampler, FrequenciesFollowTheMass) {
    // Small chi-square check; the full-size one lives in the acceptance suite.
    const auto ref = identity_permutation(3);
    Rng rng(9);
    std::map<Permutation, int> counts;
    const int draws = 30000;
    for (int i = 0; i < draws; ++i) ++counts[sample_permutation(ref, 0.4, rng)];
    double chi2 = 0.0;
    auto pi = identity_permutation(3);
    do {
        const double expected = draws * mallows_probability(pi, ref, 0.4);
        const double diff = counts[pi] - expected;
        chi2 += diff * diff / expected;
    } while (std::next_permutation(pi.begin(), pi.end()));
    EXPECT_LT(chi2, 20.52);  // df 5, alpha 0.001
}

TEST(Generate, DeterministicAndIdentityAtZero) {
    Rng a(42), b(42);
    const auto params = MallowsParams::with_identity(30, 0.5, 0.8);
    EXPECT_EQ(generate_profile(30, params, a), generate_profile(30, params, b));

    Rng c(1);
    const auto p = generate_profile(5, MallowsParams::with_identity(5, 0.0, 0.0), c);
    for (int i = 0; i < 5; ++i) {
        EXPECT_EQ(Permutation(p.man_list(i).begin(), p.man_list(i).end()), identity_permutation(5));
        EXPECT_EQ(Permutation(p.woman_list(i).begin(), p.woman_list(i).end()), identity_permutation(5));
    }
}

TEST(Generate, UniformFirstChoicesLookUniform) {
    Rng rng(77);
    const int n = 150;
    const auto p = generate_profile(n, MallowsParams::with_identity(n, 1.0, 1.0), rng);
    // Pool first choices into 10 bins of 15 women: 300 draws, 30 per bin.
    std::vector<int> bins(10);
    for (int i = 0; i < n; ++i) {
        ++bins[p.man_list(i)[0] / 15];
        ++bins[p.woman_list(i)[0] / 15];
    }
    double chi2 = 0.0;
    for (int c : bins) chi2 += (c - 30.0) * (c - 30.0) / 30.0;
    EXPECT_LT(chi2, 21.67);  // df 9, p = 0.01
}

TEST(ExpectedKendall, MatchesExactEnumeration) {
    for (double phi : {0.2, 0.5, 0.9, 1.0}) {
        const int n = 5;
        auto pi = identity_permutation(n);
        const auto ref = identity_permutation(n);
        double mean = 0.0;
        do {
            mean += mallows_probability(pi, ref, phi) * static_cast<double>(kendall_tau(pi, ref));
        } while (std::next_permutation(pi.begin(), pi.end()));
        EXPECT_NEAR(expected_kendall_tau(n, phi), mean, 1e-9);
    }
    EXPECT_NEAR(expected_kendall_tau(10, 1.0), 10 * 9 / 4.0, 1e-9);
}

TEST(EstimatePhi, Boundaries) {
    const auto ref = identity_permutation(8);
    const std::vector<Permutation> same(5, ref);
    EXPECT_DOUBLE_EQ(estimate_phi(same, ref), kMinEstimatedPhi);

    Permutation rev(ref.rbegin(), ref.rend());
    const std::vector<Permutation> reversed(3, rev);
    EXPECT_DOUBLE_EQ(estimate_phi(reversed, ref), 1.0);

    EXPECT_THROW(estimate_phi(std::vector<Permutation>{}, ref), Error);
    try {
        const std::vector<Permutation> single{{0}};
        estimate_phi(single, std::vector<int>{0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Estimation);
    }
}

TEST(EstimatePhi, RecoversTrueDispersion) {
    const int n = 150;
    const auto ref = identity_permutation(n);
    Rng rng(2024);
    std::vector<Permutation> lists;
    for (int i = 0; i < 1000; ++i) lists.push_back(sample_permutation(ref, 0.5, rng));
    EXPECT_NEAR(estimate_phi(lists, ref), 0.5, 0.05);
}

TEST(EstimatePhi, MonotoneInMeanDistance) {
    const int n = 20;
    const auto ref = identity_permutation(n);
    double previous = 0.0;
    for (double phi : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        Rng rng(static_cast<std::uint64_t>(phi * 100));
        std::vector<Permutation> lists;
        for (int i = 0; i < 400; ++i) lists.push_back(sample_permutation(ref, phi, rng));
        const double estimate = estimate_phi(lists, ref);
        EXPECT_GT(estimate, previous);
        previous = estimate;
    }
}
