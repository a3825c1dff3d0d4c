#include "sparsesel/errors.hpp"
#include "sparsesel/lattice.hpp"

#include "../oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace sparsesel;

TEST(Subsets, CountsAndOrder) {
    const auto s = enumerate_subsets(10, 2);
    ASSERT_EQ(s.size(), 45u);
    EXPECT_EQ(s.front().to_string(), "{1,2}");
    EXPECT_EQ(s.back().to_string(), "{9,10}");
    for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LT(s[i - 1], s[i]);
    EXPECT_EQ(enumerate_subsets(50, 2).size(), 1225u);
    EXPECT_EQ(enumerate_subsets(5, 5).size(), 1u);
    EXPECT_EQ(enumerate_subsets(7, 3).size(), 35u);
}

TEST(Subsets, Validation) {
    EXPECT_THROW(SubsetIndex({2, 1}), InvalidArgument);
    EXPECT_THROW(SubsetIndex({1, 1}), InvalidArgument);
    EXPECT_THROW(SubsetIndex({0, 3}), InvalidArgument);
    EXPECT_THROW(enumerate_subsets(3, 4), InvalidArgument);
    EXPECT_TRUE(SubsetIndex({1, 10}).fits(10));
    EXPECT_FALSE(SubsetIndex({1, 11}).fits(10));
}

TEST(Subsets, StableKeysDistinct) {
    std::set<std::uint64_t> keys;
    for (const auto& u : enumerate_subsets(50, 2)) keys.insert(u.stable_key());
    EXPECT_EQ(keys.size(), 1225u);
}

TEST(Binomial, Values) {
    EXPECT_DOUBLE_EQ(binomial(10, 2), 45.0);
    EXPECT_DOUBLE_EQ(binomial(50, 2), 1225.0);
    EXPECT_DOUBLE_EQ(binomial(500, 1), 500.0);
    EXPECT_NEAR(log_binomial(10, 2), std::log(45.0), 1e-13);
    EXPECT_DOUBLE_EQ(log_binomial(7, 0), 0.0);
}

TEST(Sobolev, Coefficients) {
    const EllipsoidSpec s11(1, 1.0), s21(2, 1.0), s22(2, 2.0);
    EXPECT_NEAR(sobolev_coefficient(LatticeIndex({1}), s11), 2 * oracle::pi, 1e-14);
    EXPECT_NEAR(sobolev_coefficient(LatticeIndex({1, -1}), s21), 2 * oracle::pi * std::sqrt(2.0), 1e-13);
    EXPECT_NEAR(sobolev_coefficient(LatticeIndex({1, 2}), s22), 4 * oracle::pi * oracle::pi * 5, 1e-10);
    EXPECT_NEAR(min_sobolev_coefficient(s21), 2 * oracle::pi * std::sqrt(2.0), 1e-13);
    EXPECT_NEAR(admissible_radius_bound(s22), 1.0 / (8 * oracle::pi * oracle::pi), 1e-15);
}

TEST(Sobolev, SpecValidation) {
    EXPECT_THROW(EllipsoidSpec(0, 1.0), InvalidArgument);
    EXPECT_THROW(EllipsoidSpec(2, 0.0), InvalidArgument);
    EXPECT_THROW(LatticeIndex({1, 0}), InvalidArgument);
}

class BallVsBruteForce : public ::testing::TestWithParam<std::tuple<int, double>> {};

TEST_P(BallVsBruteForce, CountsMatch) {
    const auto [k, radius] = GetParam();
    const auto ball = enumerate_ball(EllipsoidSpec(k, 1.0), radius);
    const auto shells = oracle::lattice_shells(k, static_cast<int>(std::ceil(radius)));
    long long expected = 0;
    for (const auto& [n2, m] : shells)
        if (static_cast<double>(n2) < radius * radius) expected += m;
    EXPECT_EQ(static_cast<long long>(ball.size()), expected);
    for (std::size_t i = 1; i < ball.size(); ++i) ASSERT_LT(ball[i - 1], ball[i]);
    for (const auto& l : ball) ASSERT_LT(static_cast<double>(l.norm2()), radius * radius);
}

INSTANTIATE_TEST_SUITE_P(Radii, BallVsBruteForce,
                         ::testing::Values(std::make_tuple(1, 5.5), std::make_tuple(2, 3.0),
                                           std::make_tuple(2, 10.3), std::make_tuple(3, 4.2),
                                           std::make_tuple(2, std::sqrt(2.0))));

TEST(Ball, StrictBoundaryAndCap) {
    // l = +-2 sits exactly on the sphere of radius 2 and is excluded.
    EXPECT_EQ(enumerate_ball(EllipsoidSpec(1, 1.0), 2.0).size(), 2u);
    EXPECT_TRUE(enumerate_ball(EllipsoidSpec(2, 1.0), 1.0).empty());
    EXPECT_EQ(enumerate_ball(EllipsoidSpec(2, 1.0), 1.5).size(), 4u);
    EXPECT_THROW(enumerate_ball(EllipsoidSpec(2, 1.0), 100.0, 1000), ResourceLimit);
}

TEST(Ball, SupportRadius) {
    const EllipsoidSpec s(2, 1.0);
    EXPECT_NEAR(support_radius(0.01, s), std::sqrt(3.0) / (2 * oracle::pi * 0.01), 1e-9);
    EXPECT_GT(support_radius(0.005, s), support_radius(0.01, s));
}
