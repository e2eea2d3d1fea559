#pragma once

#include <stdexcept>
#include <string>

namespace nambu {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Two values built over different variable tables were combined.
struct VariableMismatchError : Error {
    using Error::Error;
};

/// A variable name was looked up that the table does not contain.
struct UnknownVariableError : Error {
    using Error::Error;
};

/// Wrong number of arguments for an n-ary operation.
struct ArityError : Error {
    using Error::Error;
};

/// A jet derivative exceeded the configured maximum order.
struct JetOrderError : Error {
    using Error::Error;
};

/// A Laurent truncation window became empty or a required coefficient
/// lies outside the window. Checks hitting this are "indeterminate",
/// never silently passed.
struct WindowError : Error {
    using Error::Error;
};

/// Numerical integration produced a non-finite state.
struct NonFiniteError : Error {
    double time;
    NonFiniteError(const std::string& what, double t) : Error(what), time(t) {}
};

/// Malformed scenario / serialized input.
struct ParseError : Error {
    using Error::Error;
};

/// Precondition violation (degenerate constants, non-constant tensor
/// entries where constants are required, dimension mismatch, ...).
struct DomainError : Error {
    using Error::Error;
};

} // namespace nambu
