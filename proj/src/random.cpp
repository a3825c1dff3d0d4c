#include "sparsesel/random.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>

namespace sparsesel {

double RandomSource::uniform(std::uint64_t counter) const noexcept {
    // (m + 0.5) / 2^53 never hits 0 or 1.
    const std::uint64_t m = bits(counter) >> 11;
    return (static_cast<double>(m) + 0.5) * 0x1.0p-53;
}

double RandomSource::normal(std::uint64_t counter) const {
    return normal_quantile(uniform(counter));
}

double normal_quantile(double p) {
    // erfc_inv keeps full relative accuracy in both tails.
    return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

}  // namespace sparsesel
