#include "kerropt/fock.hpp"

#include <Eigen/Sparse>
#include <cmath>
#include <numbers>
#include <vector>

#include "kerropt/errors.hpp"

namespace kerropt {

namespace {

using SpMat = Eigen::SparseMatrix<cplx>;
using Dense = Eigen::MatrixXcd;
constexpr cplx iu{0.0, 1.0};

SpMat mode_a_lowering(int na, int nb) {
    const int dim = na * nb;
    SpMat m(dim, dim);
    std::vector<Eigen::Triplet<cplx>> t;
    for (int ia = 1; ia < na; ++ia)
        for (int ib = 0; ib < nb; ++ib)
            t.emplace_back((ia - 1) * nb + ib, ia * nb + ib, std::sqrt(double(ia)));
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

SpMat mode_b_lowering(int na, int nb) {
    const int dim = na * nb;
    SpMat m(dim, dim);
    std::vector<Eigen::Triplet<cplx>> t;
    for (int ia = 0; ia < na; ++ia)
        for (int ib = 1; ib < nb; ++ib)
            t.emplace_back(ia * nb + ib - 1, ia * nb + ib, std::sqrt(double(ib)));
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

cplx trace_product(const Dense& rho, const SpMat& op) {
    // Tr(rho * op) without forming the product.
    cplx sum = 0.0;
    for (int k = 0; k < op.outerSize(); ++k)
        for (SpMat::InnerIterator it(op, k); it; ++it)
            sum += it.value() * rho(it.col(), it.row());
    return sum;
}

// One Lindblad-like term r (o1 rho o2 - {o2 o1, rho}/2); the
// anticommutator halves are folded into the non-Hermitian generator.
struct Jump {
    cplx rate;
    SpMat o1;
    SpMat o2;
};

}  // namespace

FockResult fock_steady_state(const FockProblem& prob, const FockOptions& opt) {
    const int na = opt.cutoff_a;
    const int nb = opt.cutoff_b;
    if (na < 4 || nb < 4 || na > 25 || nb > 25)
        throw OracleCutoffError("Fock cutoffs must lie in [4, 25] per mode");
    const int dim = na * nb;

    const SpMat a = mode_a_lowering(na, nb);
    const SpMat b = mode_b_lowering(na, nb);
    const SpMat ad = SpMat(a.adjoint());
    const SpMat bd = SpMat(b.adjoint());
    const SpMat num_a = SpMat(ad * a);
    const SpMat num_b = SpMat(bd * b);

    const SpMat xb_sum = SpMat((bd + b).eval());
    const SpMat ad_xb = SpMat(ad * xb_sum);
    const SpMat a_xb = SpMat(a * xb_sum);
    SpMat h = SpMat((prob.delta * num_a + omega_m * num_b).eval());
    h = SpMat(h + prob.g * ad_xb + std::conj(prob.g) * a_xb);
    if (prob.two_photon != cplx(0.0, 0.0)) {
        const SpMat aa = SpMat(a * a);
        const SpMat adad = SpMat(ad * ad);
        h = SpMat(h + prob.two_photon * aa + std::conj(prob.two_photon) * adad);
    }

    std::vector<Jump> jumps;
    jumps.push_back({prob.kappa_a * (prob.bath_n + 1.0), a, ad});
    if (prob.bath_n != 0.0) jumps.push_back({prob.kappa_a * prob.bath_n, ad, a});
    if (prob.bath_m != cplx(0.0, 0.0)) {
        jumps.push_back({-prob.kappa_a * prob.bath_m, a, a});
        jumps.push_back({-prob.kappa_a * std::conj(prob.bath_m), ad, ad});
    }
    jumps.push_back({prob.kappa_b * (prob.n_th + 1.0), b, bd});
    if (prob.n_th != 0.0) jumps.push_back({prob.kappa_b * prob.n_th, bd, b});

    SpMat w = SpMat((-iu * h).eval());
    for (const auto& j : jumps) {
        const SpMat o21 = SpMat(j.o2 * j.o1);
        w = SpMat(w - (0.5 * j.rate) * o21);
    }
    const SpMat wd = SpMat(w.adjoint());

    auto rhs = [&](const Dense& rho) -> Dense {
        Dense out = w * rho + rho * wd;
        for (const auto& j : jumps) out += j.rate * (j.o1 * (rho * j.o2));
        return out;
    };

    double dt = opt.dt;
    if (dt <= 0.0) {
        const double scale = std::abs(prob.delta) * na + omega_m * nb +
                             4.0 * std::abs(prob.g) * std::sqrt(double(na * nb)) +
                             4.0 * std::abs(prob.two_photon) * na +
                             prob.kappa_a * (2.0 * prob.bath_n + 1.0 + 2.0 * std::abs(prob.bath_m)) * na +
                             prob.kappa_b * (2.0 * prob.n_th + 1.0) * nb;
        dt = std::min(0.05, 1.2 / std::max(scale, 1.0));
    }

    // Quadrature operators and symmetrized products for the covariance.
    const double isq2 = 1.0 / std::sqrt(2.0);
    std::array<SpMat, 4> u;
    u[0] = SpMat((isq2 * (ad + a)).eval());
    u[1] = SpMat((iu * isq2 * (ad - a)).eval());
    u[2] = SpMat((isq2 * (bd + b)).eval());
    u[3] = SpMat((iu * isq2 * (bd - b)).eval());
    std::array<std::array<SpMat, 4>, 4> sym;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const SpMat uij = SpMat(u[i] * u[j]);
            const SpMat uji = SpMat(u[j] * u[i]);
            sym[i][j] = SpMat(0.5 * (uij + uji));
        }

    auto covariance_of = [&](const Dense& rho) {
        CovarianceMatrix v;
        std::array<double, 4> first{};
        for (int i = 0; i < 4; ++i) first[i] = trace_product(rho, u[i]).real();
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                const double vij = trace_product(rho, sym[i][j]).real() - first[i] * first[j];
                v.v_mat(i, j) = vij;
                v.v_mat(j, i) = vij;
            }
        return v;
    };

    Dense rho = Dense::Zero(dim, dim);
    rho(0, 0) = 1.0;

    const double period = 2.0 * std::numbers::pi / omega_m;
    const std::size_t steps_per_period = static_cast<std::size_t>(std::ceil(period / dt));

    FockResult out;
    Mat4 prev_v = covariance_of(rho).v_mat;
    double t = 0.0;
    int quiet = 0;

    while (t < opt.t_end) {
        for (std::size_t k = 0; k < steps_per_period && t < opt.t_end; ++k) {
            const Dense k1 = rhs(rho);
            const Dense k2 = rhs(rho + (0.5 * dt) * k1);
            const Dense k3 = rhs(rho + (0.5 * dt) * k2);
            const Dense k4 = rhs(rho + dt * k3);
            rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += dt;
        }
        // Lindblad evolution preserves hermiticity and trace; reimpose
        // both to keep roundoff from accumulating over long runs.
        rho = 0.5 * (rho + rho.adjoint()).eval();
        rho /= rho.trace().real();

        const Mat4 v_now = covariance_of(rho).v_mat;
        const double change = (v_now - prev_v).cwiseAbs().maxCoeff() /
                              std::max(1.0, v_now.cwiseAbs().maxCoeff());
        prev_v = v_now;
        if (!std::isfinite(change))
            throw NoSteadyState("Fock integration diverged");
        if (change < 1e-10) {
            if (++quiet >= 2) {
                out.converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }

    out.mean_na = trace_product(rho, num_a).real();
    out.mean_nb = trace_product(rho, num_b).real();
    if (out.mean_na >= 0.25 * na || out.mean_nb >= 0.25 * nb)
        throw OracleCutoffError("mean occupation reached cutoff/4");

    double top_a = 0.0, top_b = 0.0;
    for (int ib = 0; ib < nb; ++ib)
        top_a += rho((na - 1) * nb + ib, (na - 1) * nb + ib).real() +
                 rho((na - 2) * nb + ib, (na - 2) * nb + ib).real();
    for (int ia = 0; ia < na; ++ia)
        top_b += rho(ia * nb + nb - 1, ia * nb + nb - 1).real() +
                 rho(ia * nb + nb - 2, ia * nb + nb - 2).real();
    if (top_a > opt.leak_tol || top_b > opt.leak_tol)
        throw OracleCutoffError("population leaked into the top two Fock levels");

    out.cov = covariance_of(rho);
    out.t_reached = t;
    return out;
}

FockResult fock_oracle(double delta_sd, cplx g_sd, double kappa_a, double kappa_b,
                       double n_th, double n_ss, cplx m_ss, const FockOptions& opt) {
    FockProblem prob;
    prob.delta = delta_sd;
    prob.g = g_sd;
    prob.two_photon = cplx(0.0, 0.0);
    prob.kappa_a = kappa_a;
    prob.kappa_b = kappa_b;
    prob.bath_n = n_ss;
    prob.bath_m = m_ss;
    prob.n_th = n_th;
    return fock_steady_state(prob, opt);
}

}  // namespace kerropt
