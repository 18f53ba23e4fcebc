#pragma once

#include "kerropt/dynamics.hpp"

namespace kerropt {

struct EntanglementRecord {
    double eta_minus = 0.0;    // smallest partially-transposed symplectic eigenvalue
    double e_n = 0.0;          // logarithmic negativity, max(0, -ln(2 eta_minus))
    double mean_phonon = 0.0;  // <b+b> in the squeezed displaced frame
    double mean_photon = 0.0;  // <a+a> in the squeezed displaced frame
};

// Logarithmic negativity from the closed form
//   Sigma(V) = det V_O + det V_M - 2 det C,
//   eta- = sqrt((Sigma - sqrt(Sigma^2 - 4 det V)) / 2).
// Requires V to pass the uncertainty check (InvariantViolation
// otherwise); throws NumericalDomainError when Sigma^2 < 4 det V.
EntanglementRecord log_negativity(const CovarianceMatrix& v);

}  // namespace kerropt
