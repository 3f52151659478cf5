#pragma once

#include <stdexcept>
#include <string>

namespace skewrank {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text; carries the 1-based line number.
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& what)
        : Error("parse error at line " + std::to_string(line_) + ": " + what), line(line_) {}
};

/// A structural invariant of the input is violated.
struct ValidationError : Error {
    using Error::Error;
};

struct OutOfRange : ValidationError {
    using ValidationError::ValidationError;
};

/// Input exceeds a desk-scale guard of the operation.
struct TooLarge : Error {
    using Error::Error;
};

/// Exhaustive search would exceed the configured budget.
struct BudgetExceeded : Error {
    double attempted_size;
    BudgetExceeded(double size, const std::string& what)
        : Error(what), attempted_size(size) {}
};

struct BadParameters : Error {
    using Error::Error;
};

struct NotACutVertex : Error {
    using Error::Error;
};

struct Disconnected : Error {
    using Error::Error;
};

struct NoCutVertex : Error {
    using Error::Error;
};

/// An exact rank was required but could not be established under the
/// requested field semantics.
struct Inexact : Error {
    using Error::Error;
};

/// No matrix with the requested support attains the requested rank.
struct NotAchievable : Error {
    using Error::Error;
};

struct UnknownCampaign : Error {
    using Error::Error;
};

struct MissingEdgeValue : ValidationError {
    using ValidationError::ValidationError;
};

struct ZeroValue : ValidationError {
    using ValidationError::ValidationError;
};

struct ExtraValue : ValidationError {
    using ValidationError::ValidationError;
};

}  // namespace skewrank
