#include "kerropt/selfcheck.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "kerropt/dynamics.hpp"
#include "kerropt/entanglement.hpp"
#include "kerropt/errors.hpp"
#include "kerropt/fock.hpp"
#include "kerropt/frames.hpp"
#include "kerropt/moments.hpp"
#include "kerropt/steady_state.hpp"

namespace kerropt {

namespace {

std::string fmt_detail(double worst, double budget) {
    std::ostringstream ss;
    ss << "worst " << worst << ", budget " << budget;
    return ss.str();
}

}  // namespace

std::vector<SystemParams> sample_accepted_points(std::size_t n, std::uint64_t seed,
                                                 bool matched) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    std::vector<SystemParams> out;
    out.reserve(n);
    while (out.size() < n) {
        SystemParams p;
        p.delta_c = -2.0 + 4.0 * u01(rng);
        p.chi = 1e-4 * u01(rng);
        p.g0 = 0.002 + 0.008 * u01(rng);
        p.omega_drive = 1.0 + 79.0 * u01(rng);
        p.kappa_a = 0.3 + 1.3 * u01(rng);
        p.kappa_b = std::pow(10.0, -5.0 + 4.0 * u01(rng));
        p.n_th = 10.0 * u01(rng);
        p.reservoir_mode = matched ? ReservoirMode::Matched : ReservoirMode::Explicit;
        if (!matched) {
            p.r_e = 0.5 * u01(rng);
            p.theta_e = 2.0 * std::numbers::pi * u01(rng);
        }

        const RootSet rs = semiclassical_roots(p);
        if (!rs.single_valued()) continue;
        try {
            const Amplitudes amp = steady_amplitudes(p, rs);
            const DisplacedFrame df = displaced_frame(p, amp);
            (void)squeeze_params(amp, df, p.chi);
        } catch (const SqueezeDomainError&) {
            continue;
        }
        out.push_back(p);
    }
    return out;
}

CheckResult check_two_photon_cancellation(std::size_t n_points, std::uint64_t seed) {
    CheckResult res{"two-photon cancellation |R(r,phi)| <= 1e-10 max(1,|delta_d|)", false, ""};
    double worst = 0.0;
    for (const auto& p : sample_accepted_points(n_points, seed, true)) {
        const Amplitudes amp = steady_amplitudes(p, semiclassical_roots(p));
        const DisplacedFrame df = displaced_frame(p, amp);
        const SqueezeAngles sa = squeeze_params(amp, df, p.chi);

        // Two-photon coefficient evaluated directly at (r, phi).
        const cplx a2 = amp.alpha_ss * amp.alpha_ss;
        const cplx eiphi = std::polar(1.0, sa.phi);
        const double sh = std::sinh(sa.r), ch = std::cosh(sa.r);
        const cplx big_r = p.chi * a2 * std::conj(eiphi) * sh * sh +
                           p.chi * std::conj(a2) * eiphi * ch * ch -
                           0.5 * df.delta_d * std::sinh(2.0 * sa.r);

        const double bound = 1e-10 * std::max(1.0, std::abs(df.delta_d));
        worst = std::max(worst, std::abs(big_r) / bound);
    }
    res.pass = worst <= 1.0;
    res.detail = fmt_detail(worst, 1.0) + " (scaled)";
    return res;
}

CheckResult check_matched_reservoir_nulling(std::size_t n_points, std::uint64_t seed) {
    CheckResult res{"matched reservoir nulling n_ss, |m_ss| <= 1e-12", false, ""};
    double worst = 0.0;
    for (const auto& p : sample_accepted_points(n_points, seed, true)) {
        const Amplitudes amp = steady_amplitudes(p, semiclassical_roots(p));
        const DisplacedFrame df = displaced_frame(p, amp);
        const SqueezeFrame sf = squeeze_frame(p, amp, df);
        worst = std::max({worst, std::abs(sf.n_ss), std::abs(sf.m_ss)});
    }
    res.pass = worst <= 1e-12;
    res.detail = fmt_detail(worst, 1e-12);
    return res;
}

CheckResult check_cardano_vs_companion(std::size_t n_cubics, std::uint64_t seed) {
    CheckResult res{"Cardano+polish vs companion-matrix eigenvalues (rel 1e-8)", false, ""};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    double worst = 0.0;
    for (std::size_t k = 0; k < n_cubics; ++k) {
        CubicCoefficients co;
        if (k % 10 < 7) {
            // Physically structured draw: a = 4k^2 spans [1e-9, 1] while
            // b scales with sqrt(a) as the fixed-point cubic does.
            const double kerr = std::pow(10.0, -4.8 + 4.5 * u01(rng)) *
                                (u01(rng) < 0.5 ? -1.0 : 1.0);
            const double dc = -2.0 + 4.0 * u01(rng);
            const double ka = 0.05 + 1.95 * u01(rng);
            const double om = 80.0 * u01(rng);
            co.a = 4.0 * kerr * kerr;
            co.b = -4.0 * dc * kerr;
            co.c = 0.25 * ka * ka + dc * dc;
            co.d = -om * om;
        } else {
            // Root-structured draw: bounded root spread, arbitrary signs.
            co.a = std::pow(10.0, -9.0 * u01(rng));
            auto mag = [&]() {
                return std::pow(10.0, -2.0 + 5.0 * u01(rng)) *
                       (u01(rng) < 0.5 ? -1.0 : 1.0);
            };
            double e1, e2, e3;  // elementary symmetric functions
            if (u01(rng) < 0.5) {
                const double r1 = mag(), r2 = mag(), r3 = mag();
                e1 = r1 + r2 + r3;
                e2 = r1 * r2 + r1 * r3 + r2 * r3;
                e3 = r1 * r2 * r3;
            } else {
                const double r1 = mag(), re = mag(), im = mag();
                e1 = r1 + 2.0 * re;
                e2 = 2.0 * r1 * re + re * re + im * im;
                e3 = r1 * (re * re + im * im);
            }
            co.b = -co.a * e1;
            co.c = co.a * e2;
            co.d = -co.a * e3;
        }
        co.a_scale = co.a;
        if (co.degenerate() || co.a == 0.0) continue;

        const auto ours = cardano_roots(co);

        // Companion matrix of the monic cubic, scaled so its entries are
        // O(1); an unbalanced companion (|d/a| huge) costs the
        // eigensolver ~||C|| * eps of absolute accuracy.
        const double bm = co.b / co.a, cm = co.c / co.a, dm = co.d / co.a;
        const double s = std::max({1e-30, std::abs(bm), std::sqrt(std::abs(cm)),
                                   std::cbrt(std::abs(dm))});
        Eigen::Matrix3d comp = Eigen::Matrix3d::Zero();
        comp(1, 0) = 1.0;
        comp(2, 1) = 1.0;
        comp(0, 2) = -dm / (s * s * s);
        comp(1, 2) = -cm / (s * s);
        comp(2, 2) = -bm / s;
        const Eigen::EigenSolver<Eigen::Matrix3d> es(comp);
        std::array<cplx, 3> ref;
        for (int i = 0; i < 3; ++i) ref[i] = s * es.eigenvalues()(i);
        // The QR backward error is ~eps * ||C|| in matrix norm, which
        // floors the small roots of a wide-spread cubic well above the
        // comparison tolerance; two Newton touch-ups restore them.
        for (auto& y : ref) {
            for (int it = 0; it < 2; ++it) {
                const cplx f = ((cplx(co.a) * y + co.b) * y + co.c) * y + co.d;
                const cplx df = (3.0 * cplx(co.a) * y + 2.0 * co.b) * y + co.c;
                if (std::abs(df) < 1e-280) break;
                const cplx y2 = y - f / df;
                const cplx f2 = ((cplx(co.a) * y2 + co.b) * y2 + co.c) * y2 + co.d;
                if (std::abs(f2) >= std::abs(f)) break;
                y = y2;
            }
        }

        double scale = 0.0;
        for (const auto& y : ref) scale = std::max(scale, std::abs(y));

        std::array<int, 3> idx = {0, 1, 2};
        double best = std::numeric_limits<double>::infinity();
        std::sort(idx.begin(), idx.end());
        do {
            double m = 0.0;
            for (int i = 0; i < 3; ++i) {
                const double denom = std::max(std::abs(ref[idx[i]]), 1e-12 * std::max(scale, 1.0));
                m = std::max(m, std::abs(ours[i] - ref[idx[i]]) / denom);
            }
            best = std::min(best, m);
        } while (std::next_permutation(idx.begin(), idx.end()));
        worst = std::max(worst, best);
    }
    res.pass = worst <= 1e-8;
    res.detail = fmt_detail(worst, 1e-8);
    return res;
}

CheckResult check_routh_vs_eigenvalues(std::size_t n_matrices, std::uint64_t seed) {
    CheckResult res{"Routh-Hurwitz verdict vs max-real-eigenvalue sign", false, ""};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    std::size_t tested = 0;
    std::size_t disagreements = 0;
    while (tested < n_matrices) {
        const double delta = -3.0 + 6.0 * u01(rng);
        const cplx g(1.0 - 2.0 * u01(rng), 1.0 - 2.0 * u01(rng));
        const double ka = 0.02 + 1.98 * u01(rng);
        const double kb = std::pow(10.0, -5.0 + 5.0 * u01(rng));

        const CharPoly cp = char_poly(delta, 0.5 * g, ka, kb);
        const double max_re =
            max_real_eigenvalue(drift_matrix(delta, 0.5 * g, ka, kb).a_mat);
        if (std::abs(max_re) < 1e-9) continue;  // boundary band excluded
        ++tested;
        const bool rh = routh_hurwitz(cp.a1, cp.a2, cp.a3, cp.a4);
        if (rh != (max_re < 0.0)) ++disagreements;
    }
    res.pass = disagreements == 0;
    std::ostringstream ss;
    ss << disagreements << " disagreement(s) in " << tested;
    res.detail = ss.str();
    return res;
}

CheckResult check_tmsv_analytic() {
    CheckResult res{"two-mode squeezed vacuum E_N == 2s (1e-10)", false, ""};
    double worst = 0.0;
    for (double s : {0.1, 0.5, 1.0}) {
        CovarianceMatrix v;
        const double c2 = 0.5 * std::cosh(2.0 * s);
        const double s2 = 0.5 * std::sinh(2.0 * s);
        v.v_mat << c2, 0, s2, 0,
                   0, c2, 0, -s2,
                   s2, 0, c2, 0,
                   0, -s2, 0, c2;
        const EntanglementRecord rec = log_negativity(v);
        worst = std::max(worst, std::abs(rec.e_n - 2.0 * s));
    }
    res.pass = worst <= 1e-10;
    res.detail = fmt_detail(worst, 1e-10);
    return res;
}

CheckResult check_three_route_point() {
    CheckResult res{"three-route covariance agreement (Lyapunov / moments / Fock)", false, ""};
    try {
        // Moderately damped synthetic point so every route converges fast;
        // bath deliberately unmatched (complex m_ss) to exercise the
        // squeezed-bath diffusion convention.
        const double delta_sd = 1.05;
        const cplx g_sd(0.015, 0.01);
        const double ka = 0.9, kb = 0.2, n_th = 0.3;
        const double n_ss = 0.04;
        const cplx m_ss = 0.03 * std::polar(1.0, 0.7);

        const DriftMatrix A = drift_matrix(delta_sd, g_sd, ka, kb);
        const DiffusionMatrix D = diffusion_matrix(ka, kb, n_th, n_ss, m_ss);
        const CovarianceMatrix v_lyap = lyapunov_steady(A, D);

        MomentSystem ms{delta_sd, g_sd, ka, kb, n_th, n_ss, m_ss};
        const IntegrationResult ir = integrate_moments(MomentVector{}, ms, 5e3);
        const CovarianceMatrix v_mom = moments_to_covariance(ir.x);

        FockOptions opt;
        opt.cutoff_a = 10;
        // The n_th = 0.3 thermal tail needs extra mechanical levels to
        // stay under the oracle's top-level leak budget.
        opt.cutoff_b = 14;
        opt.t_end = 600.0;
        const FockResult fr = fock_oracle(delta_sd, g_sd, ka, kb, n_th, n_ss, m_ss, opt);

        const double d_mom = (v_lyap.v_mat - v_mom.v_mat).cwiseAbs().maxCoeff();
        const double d_fock = (v_lyap.v_mat - fr.cov.v_mat).cwiseAbs().maxCoeff();
        res.pass = ir.converged && fr.converged && d_mom <= 1e-6 && d_fock <= 1e-4;
        std::ostringstream ss;
        ss << "|lyap-moments| " << d_mom << " (<=1e-6), |lyap-fock| " << d_fock
           << " (<=1e-4)";
        res.detail = ss.str();
    } catch (const std::exception& e) {
        res.pass = false;
        res.detail = e.what();
    }
    return res;
}

}  // namespace kerropt
