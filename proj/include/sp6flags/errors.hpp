#ifndef SP6FLAGS_ERRORS_HPP
#define SP6FLAGS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sp6flags {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (scalar, trivector, field spec, JSON payload).
struct ParseError : Error {
    using Error::Error;
};

/// A documented precondition was violated by the caller.
struct PreconditionError : Error {
    using Error::Error;
};

/// Two values from different field contexts were combined.
struct FieldMismatchError : PreconditionError {
    using PreconditionError::PreconditionError;
};

/// A symmetric matrix handed to the congruence diagonalizer was singular.
struct DegenerateFormError : PreconditionError {
    std::size_t radical_dim;
    explicit DegenerateFormError(std::size_t radical)
        : PreconditionError("degenerate form: radical dimension " + std::to_string(radical)),
          radical_dim(radical) {}
};

/// Integer factorization gave up: input exceeds the configured bound.
struct FactorBoundError : PreconditionError {
    using PreconditionError::PreconditionError;
};

/// A census run would exceed its enumeration budget.
struct BudgetError : PreconditionError {
    using PreconditionError::PreconditionError;
};

/// An internal consistency assertion failed; indicates a bug, never bad input.
struct InternalError : Error {
    using Error::Error;
};

} // namespace sp6flags

#endif
