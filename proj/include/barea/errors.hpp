#pragma once

#include <stdexcept>
#include <string>

namespace barea {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input outside the operation's domain (cut, sector, sign constraints).
struct DomainError : Error {
    using Error::Error;
};

// Evaluation on the branch cut without a side selection.
struct BranchError : DomainError {
    using DomainError::DomainError;
};

// A value left the representable range (unscaled exponentials, etc.).
struct OverflowError : Error {
    using Error::Error;
};

// A requested accuracy could not be certified; carries the achieved value.
struct ToleranceError : Error {
    double achieved;
    ToleranceError(const std::string& msg, double achieved_)
        : Error(msg), achieved(achieved_) {}
};

// Adaptive contour sampling could not keep argument steps small enough.
struct StepResolutionError : Error {
    using Error::Error;
};

// An exact-arithmetic consistency assertion failed (engine bug trap).
struct ConsistencyError : Error {
    using Error::Error;
};

}  // namespace barea
