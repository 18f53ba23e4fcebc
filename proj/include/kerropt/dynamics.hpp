#pragma once

#include <Eigen/Dense>
#include <complex>

#include "kerropt/frames.hpp"
#include "kerropt/params.hpp"

namespace kerropt {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

// Drift matrix of the quadrature Langevin system, basis
// (X_a, Y_a, X_b, Y_b).
struct DriftMatrix {
    Mat4 a_mat = Mat4::Zero();
};

// Symmetric diffusion matrix in the same basis.
struct DiffusionMatrix {
    Mat4 d_mat = Mat4::Zero();
};

enum class StabilityRegion {
    SingleStable,
    SingleUnstable,
    Multivalued,
    SqueezeInvalid,
};

std::string to_string(StabilityRegion r);

struct StabilityReport {
    double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0;
    bool rh_pass = false;
    double max_real_eig = 0.0;
    StabilityRegion region = StabilityRegion::SqueezeInvalid;
    // Valid only when region is SingleStable/SingleUnstable.
    bool linearized_valid = false;
};

// Steady-state covariance of (X_a, Y_a, X_b, Y_b) with the 2x2 blocks
// used by the entanglement measure.
struct CovarianceMatrix {
    Mat4 v_mat = Mat4::Zero();

    Mat2 v_o() const { return v_mat.topLeftCorner<2, 2>(); }
    Mat2 v_m() const { return v_mat.bottomRightCorner<2, 2>(); }
    Mat2 c() const { return v_mat.topRightCorner<2, 2>(); }
};

DriftMatrix drift_matrix(double delta_sd, cplx g_sd, double kappa_a, double kappa_b);

// Closed-form coefficients of det(lambda I - A) = lambda^4 + a1 lambda^3
// + a2 lambda^2 + a3 lambda + a4.
struct CharPoly {
    double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0;
};
CharPoly char_poly(double delta_sd, cplx g_sd, double kappa_a, double kappa_b);

// All four Routh-Hurwitz conditions for the quartic.
bool routh_hurwitz(double a1, double a2, double a3, double a4);

double max_real_eigenvalue(const Mat4& a);

// Multivalued / SqueezeInvalid / SingleStable / SingleUnstable for one
// parameter point; all failure modes are classifications, never throws.
StabilityReport classify_region(const SystemParams& p);

// Diffusion matrix for cavity bath (n_ss, m_ss) and mechanical thermal
// bath n_th. Throws BathPhysicalityError if |m_ss|^2 > n_ss(n_ss+1)+tol.
DiffusionMatrix diffusion_matrix(double kappa_a, double kappa_b, double n_th,
                                 double n_ss, cplx m_ss);

// Solves A V + V A^T + D = 0 as a 16-unknown linear system. Requires a
// Hurwitz-stable A (throws NoSteadyState otherwise) and checks the
// residual against 1e-10 * ||D||.
CovarianceMatrix lyapunov_steady(const DriftMatrix& A, const DiffusionMatrix& D);

// Symplectic positivity V + (i/2) Sigma >= 0 (within `tol`), the
// uncertainty-principle audit applied to every emitted covariance.
bool uncertainty_ok(const CovarianceMatrix& v, double tol = 1e-9);

// Smallest eigenvalue of the Hermitian matrix V + (i/2) Sigma.
double uncertainty_margin(const CovarianceMatrix& v);

}  // namespace kerropt
