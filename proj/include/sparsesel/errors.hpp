#pragma once

#include <stdexcept>
#include <string>

namespace sparsesel {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

/// The Sobolev ellipsoid with the l2-ball of radius r removed has no points.
struct EmptyEllipsoid : Error {
    using Error::Error;
};

struct NumericError : Error {
    using Error::Error;
};

struct ResourceLimit : Error {
    using Error::Error;
};

struct OutOfRange : Error {
    using Error::Error;
};

/// A caller broke a precondition that the data cannot satisfy
/// (e.g. a statistic asked for an observation that was never realized).
struct ContractViolation : Error {
    using Error::Error;
};

}  // namespace sparsesel
