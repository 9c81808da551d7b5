#pragma once

#include <stdexcept>
#include <string>

namespace triscale {

/// Base of every error thrown by the library. Callers that only need to
/// distinguish bad input from a numerical breakdown can catch the two
/// subclasses below.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input: shapes, non-triangular data,
/// non-finite entries, unknown identifiers, caps exceeded.
class InputError : public Error {
public:
    using Error::Error;
};

/// The computation itself failed: branch points, undefined principal
/// branches, overflow, iteration caps.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace triscale
