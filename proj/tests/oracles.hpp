#pragma once

// Reference computations used by the tests. Each one follows a different
// route from the library code it checks.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <vector>

namespace oracle {

constexpr double pi = std::numbers::pi;

/// Squared norms |l|^2 of every l in (Z \ {0})^k inside the cube [-R, R]^k,
/// counted with multiplicity, by brute-force odometer.
inline std::map<long long, long long> lattice_shells(int k, int R) {
    std::map<long long, long long> shells;
    std::vector<int> l(static_cast<std::size_t>(k), -R);
    while (true) {
        bool ok = true;
        long long n2 = 0;
        for (int x : l) {
            if (x == 0) ok = false;
            n2 += static_cast<long long>(x) * x;
        }
        if (ok) ++shells[n2];
        std::size_t i = 0;
        while (i < l.size() && ++l[i] > R) l[i++] = -R;
        if (i == l.size()) break;
    }
    return shells;
}

struct Extremal {
    double T = 0.0;
    double a0_sq = 0.0;
    double sum_theta2 = 0.0;
    double sum_c2theta2 = 0.0;
    double sum_theta4 = 0.0;
};

/// Extremal problem solved shell by shell. For T between consecutive
/// distinct c values the constraint ratio is a Moebius function of x = 1/T^2,
/// so r^2 = (n - S2 x) / (S2 - S4 x) is solved in closed form on each
/// interval. Returns nullopt when no interval contains the root.
inline std::optional<Extremal> extremal_by_shells(double r, int k, double sigma, int R) {
    const auto shells = lattice_shells(k, R);
    std::vector<std::pair<double, long long>> cs;  // (c, multiplicity)
    for (const auto& [n2, m] : shells) cs.emplace_back(std::pow(4 * pi * pi * n2, sigma / 2), m);
    long double n = 0, S2 = 0, S4 = 0;
    const long double r2 = static_cast<long double>(r) * r;
    for (std::size_t j = 0; j + 1 < cs.size(); ++j) {
        const long double c = cs[j].first;
        n += cs[j].second;
        S2 += cs[j].second * c * c;
        S4 += cs[j].second * c * c * c * c;
        const long double x = (n - r2 * S2) / (S2 - r2 * S4);
        const long double lo = 1.0L / (static_cast<long double>(cs[j + 1].first) * cs[j + 1].first);
        const long double hi = 1.0L / (c * c);
        // A single active shell forces x = 1/c^2 exactly and is degenerate, hence the strict bound.
        if (x >= lo && x < hi * (1 - 1e-12L)) {
            Extremal e;
            e.T = static_cast<double>(1.0L / std::sqrt(x));
            const long double W = S2 - S4 * x;  // sum c^2 (1 - c^2 x)
            const long double a0 = 1.0L / W;
            e.a0_sq = static_cast<double>(a0);
            long double t2 = 0, t4 = 0, c2t2 = 0;
            for (std::size_t i = 0; i <= j; ++i) {
                const long double ci = cs[i].first;
                const long double th = a0 * (1.0L - ci * ci * x);
                t2 += cs[i].second * th;
                c2t2 += cs[i].second * ci * ci * th;
                t4 += cs[i].second * th * th;
            }
            e.sum_theta2 = static_cast<double>(t2);
            e.sum_c2theta2 = static_cast<double>(c2t2);
            e.sum_theta4 = static_cast<double>(t4);
            return e;
        }
    }
    return std::nullopt;
}

/// (g, phi_l) by adaptive Gauss-Kronrod 61 on [0, 1].
inline double fourier_gk(const std::function<double(double)>& g, int l) {
    using boost::math::quadrature::gauss_kronrod;
    const double w = 2 * pi * std::abs(l);
    auto f = [&](double t) { return g(t) * std::sqrt(2.0) * (l > 0 ? std::cos(w * t) : std::sin(w * t)); };
    double total = 0.0;
    // Split into whole periods so each piece sees a bounded number of oscillations.
    const int pieces = std::max(1, std::abs(l));
    for (int i = 0; i < pieces; ++i)
        total += gauss_kronrod<double, 61>::integrate(f, double(i) / pieces, double(i + 1) / pieces, 8, 1e-11);
    return total;
}

inline double integral_gk(const std::function<double(double)>& g, double a = 0.0, double b = 1.0) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, a, b, 8, 1e-11);
}

/// Catalogue functions written out independently of the library.
inline double g(int id, double t) {
    switch (id) {
        case 1: return t * t * (std::exp2(t - 1) - (t - 0.5) * (t - 0.5)) * std::exp(t) - 0.5424;
        case 2: return t * t * (std::exp2(t - 1) - std::pow(t - 1, 5)) - 0.2887;
        case 3: return 15 * t * t * std::exp2(t - 1) * std::cos(15 * t) - 0.5011;
        case 4: return t - 0.5;
        default: return 5 * std::pow(t - 0.7, 3) + 0.29;
    }
}

/// C(sigma, k) from the closed form with tgamma.
inline double asymptotic_constant(int k, double sigma) {
    const double kk = k;
    const double c2 = std::pow(pi, kk) * (1 + 2 * sigma / kk) * std::tgamma(1 + kk / 2) /
                      (std::pow(1 + 4 * sigma / kk, 1 + kk / (2 * sigma)) * std::pow(std::tgamma(1.5), kk));
    return std::sqrt(c2);
}

}  // namespace oracle
