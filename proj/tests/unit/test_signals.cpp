#include "sparsesel/errors.hpp"
#include "sparsesel/signals.hpp"

#include "../oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace sparsesel;

namespace {

ComponentFunction cat(int id) { return ComponentFunction::catalogue(static_cast<Catalogue>(id - 1)); }

}  // namespace

TEST(Catalogue, PointValues) {
    EXPECT_DOUBLE_EQ(eval_g(Catalogue::g4, 0.5), 0.0);
    EXPECT_DOUBLE_EQ(eval_g(Catalogue::g4, 1.0), 0.5);
    EXPECT_NEAR(eval_g(Catalogue::g5, 0.7), 0.29, 1e-15);
    for (int id = 1; id <= 5; ++id)
        for (double t : {0.0, 0.13, 0.5, 0.77, 1.0})
            EXPECT_NEAR(cat(id)(t), oracle::g(id, t), 1e-13) << "g" << id << " at " << t;
    EXPECT_THROW(eval_g(Catalogue::g1, 1.5), InvalidArgument);
    EXPECT_THROW(eval_g(Catalogue::g1, -0.1), InvalidArgument);
    EXPECT_THROW(ComponentFunction::parse("g6"), InvalidArgument);
    EXPECT_EQ(ComponentFunction::parse("g3").id(), "g3");
}

TEST(Catalogue, ZeroMean) {
    for (int id = 1; id <= 5; ++id) {
        EXPECT_TRUE(check_zero_mean(cat(id), 1e-4)) << "g" << id;
        EXPECT_NEAR(oracle::integral_gk([&](double t) { return oracle::g(id, t); }), 0.0, 1e-4);
    }
    EXPECT_TRUE(check_zero_mean(cat(4), 1e-6));
    const auto one = ComponentFunction::tabulated({0.0, 1.0}, {1.0, 1.0}, "one");
    EXPECT_FALSE(check_zero_mean(one, 1e-4));
}

TEST(Fourier, G4ClosedForm) {
    const auto g4 = cat(4);
    EXPECT_NEAR(fourier_coefficient_1d(g4, -1), -std::sqrt(2.0) / (2 * oracle::pi), 1e-12);
    EXPECT_NEAR(fourier_coefficient_1d(g4, 1), 0.0, 1e-12);
    EXPECT_NEAR(fourier_coefficient_1d(g4, -2), -std::sqrt(2.0) / (4 * oracle::pi), 1e-12);
    const auto row = fourier_coefficients_1d(g4, 100);
    for (int l = 1; l <= 100; ++l) {
        EXPECT_NEAR(fourier_coefficient_1d(g4, -l), -std::sqrt(2.0) / (2 * oracle::pi * l), 1e-9);
        EXPECT_NEAR(row.at(-l), -std::sqrt(2.0) / (2 * oracle::pi * l), 1e-9);
        EXPECT_NEAR(row.at(l), 0.0, 1e-9);
    }
    EXPECT_THROW(fourier_coefficient_1d(g4, 0), InvalidArgument);
}

TEST(Fourier, MatchesKronrodOracle) {
    for (int id = 1; id <= 5; ++id) {
        const auto row = fourier_coefficients_1d(cat(id), 40);
        for (int l : {-40, -17, -3, -1, 1, 2, 15, 16, 40}) {
            const double ref = oracle::fourier_gk([&](double t) { return oracle::g(id, t); }, l);
            EXPECT_NEAR(row.at(l), ref, 1e-9) << "g" << id << " l=" << l;
            EXPECT_NEAR(fourier_coefficient_1d(cat(id), l), ref, 1e-9) << "g" << id << " l=" << l;
        }
    }
}

TEST(Fourier, TabulatedMatchesOracle) {
    const auto tent = ComponentFunction::tabulated({0.0, 0.3, 1.0}, {0.0, 1.0, -0.5}, "tent");
    auto f = [](double t) { return t <= 0.3 ? t / 0.3 : 1.0 - 1.5 * (t - 0.3) / 0.7; };
    EXPECT_NEAR(tent(0.65), f(0.65), 1e-15);
    for (int l : {-7, -1, 1, 4}) {
        // Split the oracle at the kink.
        const double w = 2 * oracle::pi * std::abs(l);
        auto integrand = [&](double t) { return f(t) * std::sqrt(2.0) * (l > 0 ? std::cos(w * t) : std::sin(w * t)); };
        const double ref = oracle::integral_gk(integrand, 0.0, 0.3) + oracle::integral_gk(integrand, 0.3, 1.0);
        EXPECT_NEAR(fourier_coefficient_1d(tent, l), ref, 1e-9);
        EXPECT_NEAR(fourier_coefficients_1d(tent, 8).at(l), ref, 1e-9);
    }
    EXPECT_THROW(ComponentFunction::tabulated({0.1, 1.0}, {0, 0}), InvalidArgument);
    EXPECT_THROW(ComponentFunction::tabulated({0.0, 0.5, 0.5, 1.0}, {0, 0, 0, 0}), InvalidArgument);
}

TEST(Fourier, ParsevalG4) {
    const int s = 10000;
    const auto row = fourier_coefficients_1d(cat(4), s);
    long double sum = 0.0L;
    for (int l = -s; l <= s; ++l) sum += static_cast<long double>(row.at(l)) * row.at(l);
    const double gap = 1.0 / 12.0 - static_cast<double>(sum);
    EXPECT_GT(gap, 0.0);
    EXPECT_LT(gap, 1e-5);
}

TEST(Product, G4G4SmallTable) {
    const auto t = fourier_table_product(cat(4), cat(4), SubsetIndex({1, 2}), 1);
    ASSERT_EQ(t.size(), 4u);
    const double c = std::sqrt(2.0) / (2 * oracle::pi);
    EXPECT_NEAR(t.value(LatticeIndex({-1, -1})), c * c, 1e-12);
    EXPECT_NEAR(c * c, 0.050660, 1e-6);
    EXPECT_DOUBLE_EQ(t.value(LatticeIndex({1, -1})), 0.0);
    EXPECT_DOUBLE_EQ(t.value(LatticeIndex({5, 5})), 0.0);
}

TEST(Product, FactorizesAndTransposes) {
    CoefficientCache cache;
    const int s = 12;
    const auto ab = fourier_table_product(cat(1), cat(3), SubsetIndex({1, 2}), s, &cache);
    const auto ba = fourier_table_product(cat(3), cat(1), SubsetIndex({1, 2}), s, &cache);
    const auto r1 = fourier_coefficients_1d(cat(1), s);
    const auto r3 = fourier_coefficients_1d(cat(3), s);
    EXPECT_EQ(ab.size(), static_cast<std::size_t>(4 * s * s));
    for (const auto& [ell, th] : ab.entries()) {
        const double expect = r1.at(ell[0]) * r3.at(ell[1]);
        EXPECT_EQ(th, std::abs(expect) < kZeroSnap ? 0.0 : expect);
        EXPECT_EQ(th, ba.value(LatticeIndex({ell[1], ell[0]})));
    }
    EXPECT_EQ(ab.factor_ids(), (std::vector<std::string>{"g1", "g3"}));
    EXPECT_THROW(fourier_table_product(cat(1), cat(2), SubsetIndex({1}), 3), InvalidArgument);
}

TEST(Product, ZeroFactor) {
    const auto zero = ComponentFunction::tabulated({0.0, 1.0}, {0.0, 0.0}, "zero");
    const auto t = fourier_table_product(zero, cat(2), SubsetIndex({2, 5}), 4);
    for (const auto& e : t.entries()) EXPECT_EQ(e.second, 0.0);
}

TEST(Norms, Basics) {
    const EllipsoidSpec s(2, 1.0);
    const FourierTable one(SubsetIndex({1, 2}), 1, {}, {{LatticeIndex({1, 1}), 0.1}});
    const auto n = norms(one, s);
    EXPECT_NEAR(n.l2, 0.1, 1e-15);
    EXPECT_NEAR(n.sobolev, 0.1 * 2 * oracle::pi * std::sqrt(2.0), 1e-14);
    const auto e = norms(FourierTable(SubsetIndex({1, 2}), 1, {}, {}), s);
    EXPECT_EQ(e.l2, 0.0);
    EXPECT_EQ(e.sobolev, 0.0);
}

TEST(Norms, G4G4Parseval) {
    const auto t = fourier_table_product(cat(4), cat(4), SubsetIndex({1, 2}), 400);
    EXPECT_NEAR(norms(t, EllipsoidSpec(2, 1.0)).l2, 1.0 / 12.0, 1e-3);
}

TEST(Scale, Homogeneity) {
    const EllipsoidSpec s(2, 1.0);
    const auto t = fourier_table_product(cat(1), cat(2), SubsetIndex({1, 2}), 5);
    const auto same = scale_component(t, 1.0);
    EXPECT_EQ(same.entries(), t.entries());
    for (const auto& e : scale_component(t, 0.0).entries()) EXPECT_EQ(e.second, 0.0);
    EXPECT_NEAR(norms(scale_component(t, -2.5), s).l2, 2.5 * norms(t, s).l2, 1e-15);
    EXPECT_NEAR(norms(scale_component(t, 3.0), s).sobolev, 3.0 * norms(t, s).sobolev, 1e-12);
}

TEST(Table, Validation) {
    EXPECT_THROW(FourierTable(SubsetIndex({1, 2}), 2, {}, {{LatticeIndex({3, 1}), 1.0}}), InvalidArgument);
    EXPECT_THROW(FourierTable(SubsetIndex({1, 2}), 2, {}, {{LatticeIndex({1}), 1.0}}), InvalidArgument);
    EXPECT_THROW(FourierTable(SubsetIndex({1, 2}), 2, {}, {{LatticeIndex({1, 1}), 1.0}, {LatticeIndex({1, 1}), 2.0}}),
                 InvalidArgument);
}

TEST(Table, TextRoundTrip) {
    const auto t = fourier_table_product(cat(2), cat(5), SubsetIndex({3, 7}), 6);
    std::stringstream ss;
    write_table(ss, t, {{"note", "roundtrip"}});
    const auto back = read_table(ss);
    EXPECT_EQ(back.subset(), t.subset());
    EXPECT_EQ(back.truncation(), 6);
    EXPECT_EQ(back.factor_ids(), t.factor_ids());
    EXPECT_EQ(back.entries(), t.entries());
}

TEST(Signal, ValueLookup) {
    SparseSignal sig{10, 2, {}};
    const SubsetIndex u({1, 2});
    sig.components.emplace(u, fourier_table_product(cat(4), cat(4), u, 2));
    EXPECT_NEAR(sig.value(u, LatticeIndex({-1, -2})), 2.0 / (4 * oracle::pi * oracle::pi * 2), 1e-12);
    EXPECT_EQ(sig.value(SubsetIndex({1, 3}), LatticeIndex({-1, -2})), 0.0);
}
