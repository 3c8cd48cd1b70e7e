#pragma once

#include <stdexcept>
#include <string>

namespace diskops {

// Argument lies outside the region where the operation is defined
// (e.g. a point or symbol value leaving the open unit disk).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// The requested space has no closed form or no implementation for this operation.
struct UnsupportedError : std::logic_error {
    using std::logic_error::logic_error;
};

// Truncation would discard mass that the result depends on.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative estimate did not stabilise before its size cap.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A theorem hypothesis could not be confirmed at the working truncation.
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace diskops

namespace diskops {

struct IOError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace diskops
