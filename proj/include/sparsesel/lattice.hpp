#pragma once

// Subsets u of {1..d}, frequency vectors in the punctured lattice
// (Z \ {0})^k, Sobolev coefficients and Euclidean-ball enumeration.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace sparsesel {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Default cap on the number of lattice points a single enumeration may return.
inline constexpr std::size_t kDefaultLatticeCap = 10'000'000;

/// A k-element subset of {1, ..., d}, stored strictly increasing.
class SubsetIndex {
public:
    SubsetIndex() = default;
    explicit SubsetIndex(std::vector<int> members);

    const std::vector<int>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    int operator[](std::size_t i) const { return members_[i]; }

    /// True when every member lies in [1, d].
    bool fits(int d) const noexcept;
    std::string to_string() const;

    /// 64-bit key that depends only on the members; used to seed noise streams.
    std::uint64_t stable_key() const noexcept;

    auto operator<=>(const SubsetIndex&) const = default;
    bool operator==(const SubsetIndex&) const = default;

private:
    std::vector<int> members_;
};

/// A frequency vector with k nonzero integer coordinates.
class LatticeIndex {
public:
    LatticeIndex() = default;
    explicit LatticeIndex(std::vector<int> coords);

    const std::vector<int>& coords() const noexcept { return coords_; }
    std::size_t size() const noexcept { return coords_.size(); }
    int operator[](std::size_t i) const { return coords_[i]; }

    /// Squared Euclidean norm, computed exactly in integers.
    std::int64_t norm2() const noexcept;
    std::string to_string() const;
    std::uint64_t stable_key() const noexcept;

    auto operator<=>(const LatticeIndex&) const = default;
    bool operator==(const LatticeIndex&) const = default;

private:
    std::vector<int> coords_;
};

/// Dimension k and smoothness sigma of the Sobolev ellipsoid.
struct EllipsoidSpec {
    int k = 1;
    double sigma = 1.0;

    EllipsoidSpec() = default;
    EllipsoidSpec(int k_, double sigma_);
};

/// All k-subsets of {1..d} in lexicographic order.
std::vector<SubsetIndex> enumerate_subsets(int d, int k);

/// log C(n, k) through log-gamma; finite for any 0 <= k <= n.
double log_binomial(int n, int k);

/// C(n, k) as a double (exact for the sizes used here).
double binomial(int n, int k);

/// c_l = (sum_i (2 pi l_i)^2)^(sigma/2).
double sobolev_coefficient(const LatticeIndex& ell, const EllipsoidSpec& spec);

/// Same as sobolev_coefficient but from the integer squared norm of l.
double sobolev_from_norm2(std::int64_t norm2, double sigma) noexcept;

/// Smallest c_l over the lattice: (2 pi)^sigma k^(sigma/2).
double min_sobolev_coefficient(const EllipsoidSpec& spec);

/// Supremum of admissible removed-ball radii, 1 / min_sobolev_coefficient.
double admissible_radius_bound(const EllipsoidSpec& spec);

/// Euclidean radius outside which the asymptotic extremal profile at
/// removed-ball radius r vanishes: (1 + 4 sigma/k)^(1/(2 sigma)) / (2 pi r^(1/sigma)).
double support_radius(double r, const EllipsoidSpec& spec);

/// Every l in (Z \ {0})^k with ||l|| < radius, in lexicographic order.
/// Throws ResourceLimit when more than `cap` points would be produced.
std::vector<LatticeIndex> enumerate_ball(const EllipsoidSpec& spec, double radius,
                                         std::size_t cap = kDefaultLatticeCap);

}  // namespace sparsesel
