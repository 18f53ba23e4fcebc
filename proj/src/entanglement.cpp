#include "kerropt/entanglement.hpp"

#include <cmath>

#include "kerropt/errors.hpp"

namespace kerropt {

EntanglementRecord log_negativity(const CovarianceMatrix& v) {
    if (!uncertainty_ok(v))
        throw InvariantViolation("covariance matrix violates the uncertainty principle");

    const double det_o = v.v_o().determinant();
    const double det_m = v.v_m().determinant();
    const double det_c = v.c().determinant();
    const double det_v = v.v_mat.determinant();

    const double sigma = det_o + det_m - 2.0 * det_c;
    const double disc = sigma * sigma - 4.0 * det_v;
    if (disc < -1e-12 * std::max(1.0, sigma * sigma))
        throw NumericalDomainError("Sigma(V)^2 < 4 det V: unphysical covariance upstream");

    const double inner = 0.5 * (sigma - std::sqrt(std::max(disc, 0.0)));
    if (inner <= 0.0)
        throw NumericalDomainError("partially transposed symplectic eigenvalue is not positive");

    EntanglementRecord rec;
    rec.eta_minus = std::sqrt(inner);
    rec.e_n = std::max(0.0, -std::log(2.0 * rec.eta_minus));
    rec.mean_phonon = 0.5 * (v.v_m()(0, 0) + v.v_m()(1, 1) - 1.0);
    rec.mean_photon = 0.5 * (v.v_o()(0, 0) + v.v_o()(1, 1) - 1.0);
    return rec;
}

}  // namespace kerropt
