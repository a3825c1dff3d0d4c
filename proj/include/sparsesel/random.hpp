#pragma once

// Counter-based random streams. A variate is a pure function of
// (seed, stream, counter), so lazily realized or parallel draws never
// depend on evaluation order.

#include <cstdint>

namespace sparsesel {

/// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t combine64(std::uint64_t a, std::uint64_t b) noexcept {
    return mix64(a ^ mix64(b + 0x632be59bd9b4e019ULL));
}

class RandomSource {
public:
    constexpr RandomSource() = default;
    constexpr explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : seed_(seed), stream_(stream) {}

    constexpr std::uint64_t seed() const noexcept { return seed_; }
    constexpr std::uint64_t stream() const noexcept { return stream_; }

    /// A child source whose variates are independent of the parent's.
    constexpr RandomSource derive(std::uint64_t tag) const noexcept {
        return RandomSource(seed_, combine64(stream_, tag));
    }

    constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
        return combine64(combine64(seed_, stream_), counter);
    }

    /// Uniform on the open interval (0, 1); 53 random bits.
    double uniform(std::uint64_t counter) const noexcept;

    /// Standard normal by inverse CDF of uniform(counter).
    double normal(std::uint64_t counter) const;

    /// Standard normal keyed by two coordinates (e.g. subset key, lattice key).
    double normal(std::uint64_t a, std::uint64_t b) const { return normal(combine64(a, b)); }

private:
    std::uint64_t seed_ = 0;
    std::uint64_t stream_ = 0;
};

/// Inverse of the standard normal CDF.
double normal_quantile(double p);

}  // namespace sparsesel
