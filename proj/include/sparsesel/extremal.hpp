#pragma once

// The extremal problem on the Sobolev ellipsoid with a ball removed:
//
//   a^2(r) = (1 / (2 eps^4)) inf { sum theta_l^4 : sum c_l^2 theta_l^2 <= 1, sum theta_l^2 >= r^2 }
//
// whose minimizer has the shape theta*_l^2 = a0^2 (1 - (c_l / T)^2)_+.
// Provides the exact solution, the fixed-k and growing-k asymptotics,
// chi-square weights built from a profile, and the inverse map target -> r*.

#include "sparsesel/lattice.hpp"

#include <string_view>
#include <vector>

namespace sparsesel {

/// Which a(r) drives the inverse problem and the weight construction.
enum class AMode { exact, asymptotic };

/// Which closed form the asymptotic profile uses.
enum class Regime { fixed_k, growing_k };

std::string_view to_string(AMode mode) noexcept;
AMode parse_amode(std::string_view text);

/// Squared extremal coefficients on their (finite) support, lexicographic in l.
struct ThetaProfile {
    std::vector<LatticeIndex> indices;
    std::vector<double> theta_sq;

    std::size_t size() const noexcept { return indices.size(); }
    double sum() const noexcept;            // sum theta^2
    double sum_sq() const noexcept;         // sum theta^4
    double weighted_sum(const EllipsoidSpec& spec) const;  // sum c^2 theta^2
};

struct ExtremalSolution {
    EllipsoidSpec spec;
    double r = 0.0;
    double eps = 0.0;
    double a0_sq = 0.0;
    double cutoff = 0.0;  // T
    ThetaProfile profile;
    double a_value = 0.0;
};

/// Solves the extremal problem on the lattice. T is found by bisection on
/// r^2 = sum (1 - (c/T)^2)_+ / sum c^2 (1 - (c/T)^2)_+, then a0^2 from the
/// ellipsoid constraint. Throws EmptyEllipsoid when r is not admissible.
ExtremalSolution solve_extremal_exact(double r, const EllipsoidSpec& spec, double eps);

/// sqrt(sum theta^4 / 2) / eps^2 for a stored solution.
double a_exact(const ExtremalSolution& solution);

/// sqrt(sum theta^4 / 2) / eps^2 for an arbitrary profile.
double a_from_profile(const ThetaProfile& profile, double eps);

/// C(sigma, k) with C^2 = pi^k (1 + 2 sigma/k) Gamma(1 + k/2)
///                        / ((1 + 4 sigma/k)^(1 + k/(2 sigma)) Gamma(3/2)^k).
double asymptotic_constant(const EllipsoidSpec& spec);

/// C(sigma, k) r^(2 + k/(2 sigma)) / eps^2.
double a_asymptotic_fixed_k(double r, const EllipsoidSpec& spec, double eps);

/// (2 pi k / e)^(k/4) e^(-1) (pi k)^(1/4) r^(2 + k/(2 sigma)) / eps^2.
double a_asymptotic_growing_k(double r, const EllipsoidSpec& spec, double eps);

/// Leading factor A of the closed-form profile theta*^2 = A (1 - c^2 r^2 / (1 + 4 sigma/k))_+.
double asymptotic_amplitude(double r, const EllipsoidSpec& spec, Regime regime = Regime::fixed_k);

/// Cutoff T = sqrt(1 + 4 sigma/k) / r of the closed-form profile.
double asymptotic_cutoff(double r, const EllipsoidSpec& spec);

/// Closed-form theta*_l(r)^2, including the positive-part cutoff.
double theta_star_asymptotic(const LatticeIndex& ell, double r, const EllipsoidSpec& spec,
                             Regime regime = Regime::fixed_k);

/// theta_star_asymptotic over every lattice point inside support_radius(r).
ThetaProfile asymptotic_profile(double r, const EllipsoidSpec& spec,
                                Regime regime = Regime::fixed_k);

/// Chi-square weights omega_l = theta*_l^2 / (2 eps^2 a), lexicographic in l.
struct WeightProfile {
    std::vector<LatticeIndex> indices;
    std::vector<double> weights;
    double r_star = 0.0;

    std::size_t size() const noexcept { return indices.size(); }
    double sum_sq() const noexcept;
};

/// Builds omega from a profile and then rescales by one scalar so that
/// sum omega^2 = 1/2 holds to rounding. Throws InvalidArgument on an
/// all-zero profile or a <= 0.
WeightProfile make_weights(const ThetaProfile& profile, double a, double eps, double r_star);

/// Right side of the r* equation: (1 + sqrt(1 - beta)) sqrt(2 log C(d, k)).
double selection_target(double beta, double log_binom);

/// r with a(r) = target. Asymptotic mode inverts the fixed-k formula in
/// closed form; exact mode bisects on r using monotonicity of a.
/// Throws OutOfRange when the target is not reachable by an admissible r.
double solve_r_star(double target, const EllipsoidSpec& spec, double eps, AMode mode);

/// theta* profile at r under the chosen mode (exact solution or fixed-k asymptotics).
ThetaProfile extremal_profile(double r, const EllipsoidSpec& spec, double eps, AMode mode);

/// a(r) under the chosen mode.
double a_value(double r, const EllipsoidSpec& spec, double eps, AMode mode);

}  // namespace sparsesel
