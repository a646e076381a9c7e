#pragma once

#include <stdexcept>
#include <string>

namespace circlelab {

// Precondition violation on a documented operation domain.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// slope_fit called with fewer than 2 points or all abscissae equal.
struct DegenerateFitError : DomainError {
    using DomainError::DomainError;
};

// A closest-return distance reached zero: the rotation number is rational.
struct PeriodicOrbitError : std::runtime_error {
    long period;
    long winding;
    PeriodicOrbitError(long q, long p)
        : std::runtime_error("periodic orbit detected: rotation number = " +
                             std::to_string(p) + "/" + std::to_string(q)),
          period(q), winding(p) {}
};

// Dynamical-partition combinatorics check failed; message names the first
// offending triple. Usually means a wrong rotation number or exhausted
// precision.
struct CombinatoricsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Orbit/memory budget exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An exact-identity residual exceeded its tolerance.
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace circlelab
