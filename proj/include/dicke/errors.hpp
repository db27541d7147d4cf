// errors.hpp: Exception hierarchy shared by every module.
//
// The CLI maps each class onto an exit code:
//   ValidationError -> 2, CutoffError -> 3, NumericalError -> 4.

#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

/// Malformed input: bad indices, non-positive sizes, mismatched dimensions.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The Fock truncation is too small for the requested amplitude, or a state
/// carries weight near the cutoff.
class CutoffError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Solver non-convergence or a resonant perturbative denominator.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by rs_corrections when |(n - n1) omega -/+ Omega| <= resonance_tol.
class ResonanceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace dicke
