#pragma once

#include <stdexcept>
#include <string>

namespace sawlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Target vertex of a step is already part of the walk.
struct OccupiedError : Error {
    using Error::Error;
};

// Point falls outside the active domain, or a parameter is outside the
// function's mathematical domain.
struct DomainError : Error {
    using Error::Error;
};

struct NotClosableError : Error {
    using Error::Error;
};

// Estimated search size exceeds the configured ceiling.
struct BudgetError : Error {
    using Error::Error;
};

// A marginal/aggregate would be provably truncated by the available range.
struct CoverageError : Error {
    using Error::Error;
};

struct InsufficientDataError : Error {
    using Error::Error;
};

struct AbsentPerimeterError : Error {
    using Error::Error;
};

struct AbsentDisplacementError : Error {
    using Error::Error;
};

struct AbsentLengthError : Error {
    using Error::Error;
};

struct BoundaryVertexError : Error {
    using Error::Error;
};

struct ToleranceError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    using Error::Error;
};

} // namespace sawlab
