#pragma once

#include <stdexcept>
#include <string>

namespace wickfock {

// Malformed or inconsistent input (dimension mismatch, bad JSON, ...).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A documented precondition of an operation does not hold
// (e.g. negative Berezin diagonal handed to the Garding experiment).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature or iteration failed to converge within the configured budget.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal consistency check failed; indicates a bug, not bad input.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace wickfock
