#pragma once

#include <array>
#include <complex>
#include <vector>

#include "kerropt/params.hpp"

namespace kerropt {

using cplx = std::complex<double>;

// Relative tolerance for accepting/polishing cubic roots.
inline constexpr double tol_root = 1e-10;

// Coefficients of a*y^3 + b*y^2 + c*y + d = 0 in y = |alpha_ss|^2.
struct CubicCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;

    // Scale of the individual contributions to `a`; used to decide
    // degeneracy (a == 0 up to cancellation noise).
    double a_scale = 0.0;

    bool degenerate() const;
};

enum class RootMultiplicity {
    SingleReal,  // exactly one admissible root (counted with multiplicity)
    TripleReal,  // all three roots coincide at an admissible value
    MultiReal,   // anything else (bistable/tristable or no admissible root)
};

struct RootSet {
    // Distinct real roots with y >= 0, ascending.
    std::vector<double> roots;
    // Cardano discriminant eta = (q/2)^2 + (p/3)^3; NaN when the cubic
    // was degenerate and a reduced equation was solved instead.
    double discriminant_eta = 0.0;
    RootMultiplicity multiplicity = RootMultiplicity::MultiReal;

    bool single_valued() const {
        return multiplicity != RootMultiplicity::MultiReal;
    }
};

struct Amplitudes {
    cplx alpha_ss{0.0, 0.0};
    cplx beta_ss{0.0, 0.0};
    double y = 0.0;  // |alpha_ss|^2 as solved from the cubic
};

// The four closed-form coefficients with omega_m = 1. Never throws;
// check degenerate() before handing the result to solve_cubic.
CubicCoefficients cubic_coefficients(const SystemParams& p);

// The three (complex) Cardano roots, principal-branch cube roots,
// each polished by one Newton step on the original cubic.
std::array<cplx, 3> cardano_roots(const CubicCoefficients& co);

// Classifies and retains admissible roots. Throws DegenerateCubic when
// co.degenerate().
RootSet solve_cubic(const CubicCoefficients& co);

// Fallback for the degenerate cubic (quadratic or linear fixed-point
// equation). discriminant_eta of the result is NaN.
RootSet solve_reduced(const CubicCoefficients& co);

// Cubic or reduced solve as appropriate.
RootSet semiclassical_roots(const SystemParams& p);

// Closed-form steady amplitudes from the admissible root. Throws
// MultistableRegime unless rs is single-valued.
Amplitudes steady_amplitudes(const SystemParams& p, const RootSet& rs);

// Moduli of the two fixed-point equation right-hand sides evaluated at
// (alpha_ss, beta_ss); both are ~0 for a correct solution.
std::array<double, 2> fixed_point_residual(const SystemParams& p, const Amplitudes& amp);

}  // namespace kerropt
