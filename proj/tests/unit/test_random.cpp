#include "sparsesel/random.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace sparsesel;

TEST(Random, PureFunctionOfCounter) {
    const RandomSource a(7, 3), b(7, 3), c(7, 4), d(8, 3);
    EXPECT_EQ(a.bits(12), b.bits(12));
    EXPECT_NE(a.bits(12), c.bits(12));
    EXPECT_NE(a.bits(12), d.bits(12));
    EXPECT_EQ(a.normal(99), b.normal(99));
    EXPECT_NE(a.derive(1).bits(0), a.derive(2).bits(0));
}

TEST(Random, UniformOpenInterval) {
    const RandomSource r(1);
    for (std::uint64_t i = 0; i < 100000; ++i) {
        const double u = r.uniform(i);
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Random, NormalQuantileTable) {
    EXPECT_NEAR(normal_quantile(0.5), 0.0, 1e-15);
    EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-13);
    EXPECT_NEAR(normal_quantile(0.025), -1.959963984540054, 1e-13);
    EXPECT_NEAR(normal_quantile(1e-10), -6.361340902404056, 1e-10);
}

TEST(Random, NormalMoments) {
    const RandomSource r(2024, 5);
    const int n = 400000;
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal(static_cast<std::uint64_t>(i));
        s1 += z;
        s2 += z * z;
        s3 += z * z * z;
        s4 += z * z * z * z;
    }
    // Four standard errors of each sample moment.
    EXPECT_NEAR(s1 / n, 0.0, 4 * std::sqrt(1.0 / n));
    EXPECT_NEAR(s2 / n, 1.0, 4 * std::sqrt(2.0 / n));
    EXPECT_NEAR(s3 / n, 0.0, 4 * std::sqrt(15.0 / n));
    EXPECT_NEAR(s4 / n, 3.0, 4 * std::sqrt(96.0 / n));
}

TEST(Random, PairKeyedVariatesUncorrelated) {
    const RandomSource r(11);
    const int n = 200000;
    double sxy = 0;
    for (int i = 0; i < n; ++i) sxy += r.normal(1, static_cast<std::uint64_t>(i)) * r.normal(2, static_cast<std::uint64_t>(i));
    EXPECT_NEAR(sxy / n, 0.0, 4 / std::sqrt(double(n)));
}
