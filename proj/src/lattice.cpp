#include "sparsesel/lattice.hpp"

#include "sparsesel/errors.hpp"
#include "sparsesel/random.hpp"

#include <cmath>
#include <sstream>

namespace sparsesel {

namespace {

std::string join_braced(const std::vector<int>& v, char open, char close) {
    std::ostringstream os;
    os << open;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    os << close;
    return os.str();
}

std::uint64_t key_of(const std::vector<int>& v, std::uint64_t salt) {
    std::uint64_t h = mix64(salt ^ v.size());
    for (int x : v) h = combine64(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(x)));
    return h;
}

}  // namespace

SubsetIndex::SubsetIndex(std::vector<int> members) : members_(std::move(members)) {
    if (members_.empty()) throw InvalidArgument("subset must be nonempty");
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i] < 1) throw InvalidArgument("subset members must be >= 1");
        if (i && members_[i] <= members_[i - 1])
            throw InvalidArgument("subset members must be strictly increasing: " +
                                  join_braced(members_, '{', '}'));
    }
}

bool SubsetIndex::fits(int d) const noexcept {
    return !members_.empty() && members_.back() <= d;
}

std::string SubsetIndex::to_string() const { return join_braced(members_, '{', '}'); }

std::uint64_t SubsetIndex::stable_key() const noexcept { return key_of(members_, 0x5u); }

LatticeIndex::LatticeIndex(std::vector<int> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw InvalidArgument("lattice index must have k >= 1 coordinates");
    for (int c : coords_)
        if (c == 0) throw InvalidArgument("lattice coordinates must be nonzero");
}

std::int64_t LatticeIndex::norm2() const noexcept {
    std::int64_t s = 0;
    for (int c : coords_) s += static_cast<std::int64_t>(c) * c;
    return s;
}

std::string LatticeIndex::to_string() const { return join_braced(coords_, '(', ')'); }

std::uint64_t LatticeIndex::stable_key() const noexcept { return key_of(coords_, 0x11u); }

EllipsoidSpec::EllipsoidSpec(int k_, double sigma_) : k(k_), sigma(sigma_) {
    if (k < 1) throw InvalidArgument("ellipsoid dimension k must be >= 1");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw InvalidArgument("smoothness sigma must be positive");
}

std::vector<SubsetIndex> enumerate_subsets(int d, int k) {
    if (k < 1 || k > d) throw InvalidArgument("enumerate_subsets requires 1 <= k <= d");
    std::vector<SubsetIndex> out;
    out.reserve(static_cast<std::size_t>(binomial(d, k)));
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i + 1;
    while (true) {
        out.emplace_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == d - k + i + 1) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) throw InvalidArgument("log_binomial requires 0 <= k <= n");
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) throw InvalidArgument("binomial requires 0 <= k <= n");
    if (k > n - k) k = n - k;
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return std::round(c);
}

double sobolev_from_norm2(std::int64_t norm2, double sigma) noexcept {
    return std::pow(kTwoPi * kTwoPi * static_cast<double>(norm2), 0.5 * sigma);
}

double sobolev_coefficient(const LatticeIndex& ell, const EllipsoidSpec& spec) {
    return sobolev_from_norm2(ell.norm2(), spec.sigma);
}

double min_sobolev_coefficient(const EllipsoidSpec& spec) {
    return std::pow(kTwoPi, spec.sigma) * std::pow(static_cast<double>(spec.k), 0.5 * spec.sigma);
}

double admissible_radius_bound(const EllipsoidSpec& spec) {
    return 1.0 / min_sobolev_coefficient(spec);
}

double support_radius(double r, const EllipsoidSpec& spec) {
    if (!(r > 0.0)) throw InvalidArgument("support_radius requires r > 0");
    const double k = spec.k;
    const double s = spec.sigma;
    return std::pow(1.0 + 4.0 * s / k, 1.0 / (2.0 * s)) / (kTwoPi * std::pow(r, 1.0 / s));
}

std::vector<LatticeIndex> enumerate_ball(const EllipsoidSpec& spec, double radius,
                                         std::size_t cap) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw InvalidArgument("enumerate_ball requires a finite radius > 0");
    const double r2 = radius * radius;
    const int k = spec.k;
    const int m = static_cast<int>(std::ceil(radius));

    std::vector<LatticeIndex> out;
    std::vector<int> cur(k, 0);
    // Depth-first over coordinates in increasing order gives lexicographic output.
    auto rec = [&](auto&& self, int depth, std::int64_t used) -> void {
        const std::int64_t remaining_min = static_cast<std::int64_t>(k - depth - 1);
        for (int v = -m; v <= m; ++v) {
            if (v == 0) continue;
            const std::int64_t n2 = used + static_cast<std::int64_t>(v) * v;
            // Each later coordinate contributes at least 1.
            if (static_cast<double>(n2 + remaining_min) >= r2) continue;
            cur[depth] = v;
            if (depth + 1 == k) {
                if (out.size() >= cap)
                    throw ResourceLimit("lattice ball enumeration exceeds the cap of " +
                                        std::to_string(cap) + " points");
                out.emplace_back(cur);
            } else {
                self(self, depth + 1, n2);
            }
        }
    };
    rec(rec, 0, 0);
    return out;
}

}  // namespace sparsesel
