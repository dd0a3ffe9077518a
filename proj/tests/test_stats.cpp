#include <gtest/gtest.h>

#include <numeric>

#include "error.hpp"
#include "stats.hpp"

using namespace smf;

TEST(Quantile, LinearInterpolation) {
    const std::vector<double> v{4, 1, 3, 2};
    EXPECT_DOUBLE_EQ(quantile(v, 0.5), 2.5);
    EXPECT_DOUBLE_EQ(quantile(v, 0.25), 1.75);
    EXPECT_DOUBLE_EQ(quantile(v, 0.75), 3.25);
    EXPECT_DOUBLE_EQ(quantile(v, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(quantile(v, 1.0), 4.0);
    EXPECT_THROW(quantile(std::vector<double>{}, 0.5), Error);
    EXPECT_THROW(quantile(v, 1.5), Error);
}

TEST(Statistics, AllKinds) {
    const std::vector<double> v{1, 2, 3, 4, 10};
    EXPECT_DOUBLE_EQ(compute_statistic(v, Statistic::Median), 3);
    EXPECT_DOUBLE_EQ(compute_statistic(v, Statistic::Mean), 4);
    EXPECT_DOUBLE_EQ(compute_statistic(v, Statistic::Q1), 2);
    EXPECT_DOUBLE_EQ(compute_statistic(v, Statistic::Q3), 4);
    EXPECT_DOUBLE_EQ(compute_statistic(v, Statistic::Max), 10);
    EXPECT_STREQ(to_string(Statistic::Q3), "q3");
}

TEST(Bootstrap, ConstantSamples) {
    Rng rng(1);
    const auto s = bootstrap_ci(std::vector<double>{5, 5, 5, 5}, Statistic::Median, 100, rng);
    EXPECT_DOUBLE_EQ(s.value, 5);
    EXPECT_DOUBLE_EQ(*s.ci_low, 5);
    EXPECT_DOUBLE_EQ(*s.ci_high, 5);
}

TEST(Bootstrap, MedianOfARange) {
    std::vector<double> v(1000);
    std::iota(v.begin(), v.end(), 1.0);
    Rng rng(2);
    const auto s = bootstrap_ci(v, Statistic::Median, 100, rng);
    EXPECT_DOUBLE_EQ(s.value, 500.5);
    EXPECT_LE(*s.ci_low, 500.5);
    EXPECT_GE(*s.ci_high, 500.5);
    EXPECT_GT(*s.ci_low, 400);
    EXPECT_LT(*s.ci_high, 600);
}

TEST(Bootstrap, BinaryMeanStaysInUnitInterval) {
    Rng rng(3);
    std::vector<double> v;
    for (int i = 0; i < 200; ++i) v.push_back(i % 7 == 0 ? 1.0 : 0.0);
    const auto s = bootstrap_ci(v, Statistic::Mean, 100, rng);
    EXPECT_GE(*s.ci_low, 0.0);
    EXPECT_LE(*s.ci_high, 1.0);
    EXPECT_LE(*s.ci_low, s.value);
    EXPECT_GE(*s.ci_high, s.value);
}

TEST(Bootstrap, PointEstimateAlwaysInsideInterval) {
    Rng rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v;
        const int size = 1 + trial % 9;
        for (int i = 0; i < size; ++i) v.push_back(static_cast<double>(rng.below(1000)));
        for (Statistic s : {Statistic::Median, Statistic::Mean}) {
            const auto r = bootstrap_ci(v, s, 20, rng);
            EXPECT_LE(*r.ci_low, r.value);
            EXPECT_GE(*r.ci_high, r.value);
        }
    }
}

TEST(Bootstrap, RejectsBadInput) {
    Rng rng(5);
    EXPECT_THROW(bootstrap_ci(std::vector<double>{}, Statistic::Mean, 10, rng), Error);
    EXPECT_THROW(bootstrap_ci(std::vector<double>{1}, Statistic::Mean, 0, rng), Error);
}
