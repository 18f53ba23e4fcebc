#include "kerropt/moments.hpp"

#include <cmath>
#include <numbers>

#include "kerropt/errors.hpp"

namespace kerropt {

namespace {
constexpr cplx iu{0.0, 1.0};
}

bool MomentVector::conjugate_paired(double tol) const {
    auto close = [&](int i, int j) {
        return std::abs(x(i) - std::conj(x(j))) <= tol * (1.0 + std::abs(x(i)));
    };
    return std::abs(x(0).imag()) <= tol * (1.0 + std::abs(x(0))) &&
           std::abs(x(1).imag()) <= tol * (1.0 + std::abs(x(1))) &&
           close(3, 2) && close(5, 4) && close(7, 6) && close(9, 8);
}

Mat10c moment_matrix(const MomentSystem& s) {
    const cplx g = s.g_sd;
    const cplx gc = std::conj(g);
    const double ka = s.kappa_a;
    const double kb = s.kappa_b;

    const cplx k1 = 2.0 * iu * s.delta_sd - ka;
    const cplx k2 = 2.0 * iu * omega_m - kb;
    const cplx k3 = iu * s.delta_sd + iu * omega_m - 0.5 * (ka + kb);
    const cplx k4 = iu * s.delta_sd - iu * omega_m - 0.5 * (ka + kb);

    Mat10c m = Mat10c::Zero();
    // Ordering: (0) <a+a> (1) <b+b> (2) <a+a+> (3) <aa> (4) <b+b+>
    //           (5) <bb>  (6) <a+b+> (7) <ab>  (8) <a+b> (9) <ab+>
    m(0, 0) = -ka;
    m(0, 6) = -iu * g; m(0, 7) = iu * gc; m(0, 8) = -iu * g; m(0, 9) = iu * gc;

    m(1, 1) = -kb;
    m(1, 6) = -iu * g; m(1, 7) = iu * gc; m(1, 8) = iu * g; m(1, 9) = -iu * gc;

    m(2, 2) = k1;
    m(2, 6) = 2.0 * iu * gc; m(2, 8) = 2.0 * iu * gc;

    m(3, 3) = std::conj(k1);
    m(3, 7) = -2.0 * iu * g; m(3, 9) = -2.0 * iu * g;

    m(4, 4) = k2;
    m(4, 6) = 2.0 * iu * g; m(4, 9) = 2.0 * iu * gc;

    m(5, 5) = std::conj(k2);
    m(5, 7) = -2.0 * iu * gc; m(5, 8) = -2.0 * iu * g;

    m(6, 0) = iu * gc; m(6, 1) = iu * gc; m(6, 2) = iu * g;
    m(6, 4) = iu * gc; m(6, 6) = k3;

    m(7, 0) = -iu * g; m(7, 1) = -iu * g; m(7, 3) = -iu * gc;
    m(7, 5) = -iu * g; m(7, 7) = std::conj(k3);

    m(8, 0) = -iu * gc; m(8, 1) = iu * gc; m(8, 2) = -iu * g;
    m(8, 5) = iu * gc; m(8, 8) = k4;

    m(9, 0) = iu * g; m(9, 1) = -iu * g; m(9, 3) = iu * gc;
    m(9, 4) = -iu * g; m(9, 9) = std::conj(k4);
    return m;
}

Vec10c moment_source(const MomentSystem& s) {
    Vec10c n = Vec10c::Zero();
    n(0) = s.kappa_a * s.n_ss;
    n(1) = s.kappa_b * s.n_th;
    n(2) = s.kappa_a * s.m_ss;
    n(3) = s.kappa_a * std::conj(s.m_ss);
    n(6) = iu * std::conj(s.g_sd);
    n(7) = -iu * s.g_sd;
    return n;
}

MomentVector moment_rhs(const MomentVector& x, const MomentSystem& s) {
    MomentVector dx;
    dx.x = moment_matrix(s) * x.x + moment_source(s);
    return dx;
}

IntegrationResult integrate_moments(const MomentVector& x0, const MomentSystem& s,
                                    double t_end, double dt) {
    const double dt_cap = 0.05 / std::max({1.0, std::abs(s.delta_sd), s.kappa_a});
    if (dt <= 0.0 || dt > dt_cap) dt = dt_cap;

    const Mat10c m = moment_matrix(s);
    const Vec10c n = moment_source(s);
    auto rhs = [&](const Vec10c& x) -> Vec10c { return m * x + n; };

    const double period = 2.0 * std::numbers::pi / omega_m;
    const std::size_t steps_per_period = static_cast<std::size_t>(std::ceil(period / dt));

    Vec10c x = x0.x;
    Vec10c prev = x;
    double t = 0.0;
    int quiet_periods = 0;
    IntegrationResult out;

    while (t < t_end) {
        for (std::size_t k = 0; k < steps_per_period && t < t_end; ++k) {
            const Vec10c k1 = rhs(x);
            const Vec10c k2 = rhs(x + 0.5 * dt * k1);
            const Vec10c k3 = rhs(x + 0.5 * dt * k2);
            const Vec10c k4 = rhs(x + dt * k3);
            x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += dt;
        }
        const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
        if (!std::isfinite(scale) || scale > 1e12)
            throw NoSteadyState("moment integration diverged (unstable drift)");
        const double change = (x - prev).cwiseAbs().maxCoeff() / scale;
        prev = x;
        if (change < 1e-10) {
            if (++quiet_periods >= 2) {
                out.converged = true;
                break;
            }
        } else {
            quiet_periods = 0;
        }
    }

    out.x.x = x;
    out.t_reached = t;
    return out;
}

CovarianceMatrix moments_to_covariance(const MomentVector& xv) {
    const Vec10c& x = xv.x;
    const double naa = x(0).real();
    const double nbb = x(1).real();
    const cplx aa2 = x(2);   // <a+a+>
    const cplx bb2 = x(4);   // <b+b+>
    const cplx abp = x(6);   // <a+b+>
    const cplx ab = x(8);    // <a+b>

    CovarianceMatrix v;
    Mat4& V = v.v_mat;
    V(0, 0) = aa2.real() + naa + 0.5;
    V(1, 1) = -aa2.real() + naa + 0.5;
    V(0, 1) = V(1, 0) = -aa2.imag();

    V(2, 2) = bb2.real() + nbb + 0.5;
    V(3, 3) = -bb2.real() + nbb + 0.5;
    V(2, 3) = V(3, 2) = -bb2.imag();

    V(0, 2) = V(2, 0) = abp.real() + ab.real();
    V(0, 3) = V(3, 0) = ab.imag() - abp.imag();
    V(1, 2) = V(2, 1) = -abp.imag() - ab.imag();
    V(1, 3) = V(3, 1) = ab.real() - abp.real();
    return v;
}

}  // namespace kerropt
