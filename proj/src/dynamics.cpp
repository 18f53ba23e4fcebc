#include "kerropt/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "kerropt/errors.hpp"
#include "kerropt/steady_state.hpp"

namespace kerropt {

std::string to_string(StabilityRegion r) {
    switch (r) {
        case StabilityRegion::SingleStable: return "SingleStable";
        case StabilityRegion::SingleUnstable: return "SingleUnstable";
        case StabilityRegion::Multivalued: return "Multivalued";
        case StabilityRegion::SqueezeInvalid: return "SqueezeInvalid";
    }
    return "?";
}

DriftMatrix drift_matrix(double delta_sd, cplx g_sd, double kappa_a, double kappa_b) {
    const double gr = g_sd.real();
    const double gi = g_sd.imag();
    DriftMatrix dm;
    dm.a_mat << -0.5 * kappa_a, delta_sd, 2.0 * gi, 0.0,
                -delta_sd, -0.5 * kappa_a, -2.0 * gr, 0.0,
                0.0, 0.0, -0.5 * kappa_b, omega_m,
                -2.0 * gr, -2.0 * gi, -omega_m, -0.5 * kappa_b;
    return dm;
}

CharPoly char_poly(double delta_sd, cplx g_sd, double kappa_a, double kappa_b) {
    const double wm2 = omega_m * omega_m;
    const double ka2 = kappa_a * kappa_a;
    const double kb2 = kappa_b * kappa_b;
    const double d2 = delta_sd * delta_sd;

    CharPoly cp;
    cp.a1 = kappa_a + kappa_b;
    cp.a2 = 0.25 * kb2 + wm2 + 0.25 * ka2 + d2 + kappa_a * kappa_b;
    cp.a3 = 0.25 * kappa_a * kb2 + kappa_a * wm2 + 0.25 * ka2 * kappa_b + kappa_b * d2;
    cp.a4 = (0.25 * ka2 + d2) * (0.25 * kb2 + wm2) -
            4.0 * omega_m * delta_sd * std::norm(g_sd);
    return cp;
}

bool routh_hurwitz(double a1, double a2, double a3, double a4) {
    return a1 > 0.0 && a3 > 0.0 && a4 > 0.0 &&
           a1 * a2 * a3 > a3 * a3 + a1 * a1 * a4;
}

double max_real_eigenvalue(const Mat4& a) {
    Eigen::EigenSolver<Mat4> es(a, /*computeEigenvectors=*/false);
    return es.eigenvalues().real().maxCoeff();
}

StabilityReport classify_region(const SystemParams& p) {
    StabilityReport rep;
    RootSet rs;
    try {
        rs = semiclassical_roots(p);
    } catch (const DegenerateCubic&) {
        // Fully degenerate fixed-point equation (kappa_a > 0 makes the
        // linear coefficient positive, so this is unreachable for valid
        // params); classify as multivalued to keep the operation total.
        rep.region = StabilityRegion::Multivalued;
        return rep;
    }
    if (!rs.single_valued()) {
        rep.region = StabilityRegion::Multivalued;
        return rep;
    }

    SqueezeFrame sf;
    try {
        const Amplitudes amp = steady_amplitudes(p, rs);
        const DisplacedFrame df = displaced_frame(p, amp);
        sf = squeeze_frame(p, amp, df);
    } catch (const SqueezeDomainError&) {
        rep.region = StabilityRegion::SqueezeInvalid;
        return rep;
    }

    const CharPoly cp = char_poly(sf.delta_sd, sf.g_sd, p.kappa_a, p.kappa_b);
    rep.a1 = cp.a1;
    rep.a2 = cp.a2;
    rep.a3 = cp.a3;
    rep.a4 = cp.a4;
    rep.rh_pass = routh_hurwitz(cp.a1, cp.a2, cp.a3, cp.a4);
    rep.max_real_eig =
        max_real_eigenvalue(drift_matrix(sf.delta_sd, sf.g_sd, p.kappa_a, p.kappa_b).a_mat);
    rep.linearized_valid = true;
    rep.region = rep.rh_pass ? StabilityRegion::SingleStable
                             : StabilityRegion::SingleUnstable;
    return rep;
}

DiffusionMatrix diffusion_matrix(double kappa_a, double kappa_b, double n_th,
                                 double n_ss, cplx m_ss) {
    if (std::norm(m_ss) > n_ss * (n_ss + 1.0) + 1e-10)
        throw BathPhysicalityError("|m_ss|^2 > n_ss(n_ss+1): unphysical effective bath");

    DiffusionMatrix dm;
    // Optical block from the second moments of the squeezed-bath master
    // equation: <aa> is sourced by m_ss*, so the X/Y cross term carries
    // -Im(m_ss). Validated against the Fock oracle.
    dm.d_mat(0, 0) = kappa_a * (0.5 + n_ss + m_ss.real());
    dm.d_mat(1, 1) = kappa_a * (0.5 + n_ss - m_ss.real());
    dm.d_mat(0, 1) = dm.d_mat(1, 0) = -kappa_a * m_ss.imag();
    const double mech = kappa_b * (2.0 * n_th + 1.0) * 0.5;
    dm.d_mat(2, 2) = mech;
    dm.d_mat(3, 3) = mech;
    return dm;
}

CovarianceMatrix lyapunov_steady(const DriftMatrix& A, const DiffusionMatrix& D) {
    if (max_real_eigenvalue(A.a_mat) >= 0.0)
        throw NoSteadyState("drift matrix is not Hurwitz-stable");

    // Vectorized form (I (x) A + A (x) I) vec(V) = -vec(D).
    Eigen::Matrix<double, 16, 16> k = Eigen::Matrix<double, 16, 16>::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int m = 0; m < 4; ++m) {
                k(4 * i + j, 4 * i + m) += A.a_mat(j, m);  // V A^T
                k(4 * j + i, 4 * m + i) += A.a_mat(j, m);  // A V
            }
    Eigen::Matrix<double, 16, 1> rhs;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rhs(4 * i + j) = -D.d_mat(i, j);

    const Eigen::Matrix<double, 16, 1> vecv = k.partialPivLu().solve(rhs);

    CovarianceMatrix v;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) v.v_mat(i, j) = vecv(4 * i + j);
    v.v_mat = 0.5 * (v.v_mat + v.v_mat.transpose()).eval();

    const double resid = (A.a_mat * v.v_mat + v.v_mat * A.a_mat.transpose() +
                          D.d_mat).norm();
    if (resid > 1e-10 * std::max(D.d_mat.norm(), 1e-300))
        throw InvariantViolation("Lyapunov residual exceeds 1e-10 * ||D||");
    return v;
}

namespace {

Eigen::Matrix4cd uncertainty_matrix(const CovarianceMatrix& v) {
    Eigen::Matrix4d sigma = Eigen::Matrix4d::Zero();
    sigma(0, 1) = 1.0;
    sigma(1, 0) = -1.0;
    sigma(2, 3) = 1.0;
    sigma(3, 2) = -1.0;
    return v.v_mat.cast<cplx>() + cplx(0.0, 0.5) * sigma.cast<cplx>();
}

}  // namespace

double uncertainty_margin(const CovarianceMatrix& v) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(uncertainty_matrix(v),
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool uncertainty_ok(const CovarianceMatrix& v, double tol) {
    return uncertainty_margin(v) >= -tol;
}

}  // namespace kerropt
