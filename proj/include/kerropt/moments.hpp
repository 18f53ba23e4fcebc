#pragma once

#include <Eigen/Dense>
#include <complex>

#include "kerropt/dynamics.hpp"

namespace kerropt {

using Vec10c = Eigen::Matrix<cplx, 10, 1>;
using Mat10c = Eigen::Matrix<cplx, 10, 10>;

// Second-order moments ordered as
// (<a+a>, <b+b>, <a+a+>, <aa>, <b+b+>, <bb>, <a+b+>, <ab>, <a+b>, <ab+>).
struct MomentVector {
    Vec10c x = Vec10c::Zero();

    bool conjugate_paired(double tol = 1e-9) const;
};

// Parameters of the moment equation of motion dX/dt = M X + N.
struct MomentSystem {
    double delta_sd = 0.0;
    cplx g_sd{0.0, 0.0};
    double kappa_a = 1.0;
    double kappa_b = 1e-5;
    double n_th = 0.0;
    double n_ss = 0.0;
    cplx m_ss{0.0, 0.0};
};

Mat10c moment_matrix(const MomentSystem& s);
Vec10c moment_source(const MomentSystem& s);

MomentVector moment_rhs(const MomentVector& x, const MomentSystem& s);

struct IntegrationResult {
    MomentVector x;
    double t_reached = 0.0;
    bool converged = false;  // steady-state detector fired before t_end
};

// Fixed-step classical RK4. dt must satisfy
// dt <= 0.05 / max(1, |delta_sd|, kappa_a); pass dt = 0 to use that cap.
// Stops early when the relative change over one mechanical period drops
// below 1e-10 (two consecutive periods). Throws NoSteadyState when the
// norm exceeds 1e12 (divergence = linear instability).
IntegrationResult integrate_moments(const MomentVector& x0, const MomentSystem& s,
                                    double t_end, double dt = 0.0);

// Quadrature covariance from the second-order moments (first moments
// are zero by construction in the displaced frames).
CovarianceMatrix moments_to_covariance(const MomentVector& x);

}  // namespace kerropt
