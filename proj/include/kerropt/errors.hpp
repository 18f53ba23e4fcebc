#pragma once

#include <stdexcept>
#include <string>

namespace kerropt {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cubic leading coefficient vanishes; caller must fall back to the
// reduced quadratic/linear fixed-point equation.
struct DegenerateCubic : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// More than one admissible semiclassical fixed point.
struct MultistableRegime : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// |2*chi*|alpha|^2 / Delta_d| >= 1: no real squeezing amplitude cancels
// the two-photon terms.
struct SqueezeDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Effective bath parameters violate |M|^2 <= N(N+1).
struct BathPhysicalityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Drift matrix is not Hurwitz-stable; no steady covariance exists.
struct NoSteadyState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncated-Fock integration leaked population into the top levels.
struct OracleCutoffError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Covariance matrix outside the domain of the symplectic-eigenvalue
// closed form (signals an unphysical V upstream).
struct NumericalDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A documented internal invariant failed (maps to process exit code 2).
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace kerropt
