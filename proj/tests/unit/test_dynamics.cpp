#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "kerropt/dynamics.hpp"
#include "kerropt/errors.hpp"
#include "kerropt/moments.hpp"
#include "kerropt/selfcheck.hpp"

using namespace kerropt;

TEST_CASE("drift_matrix: decoupled modes for G = 0") {
    const double delta = 0.8, ka = 0.6, kb = 1e-4;
    const auto A = drift_matrix(delta, {0.0, 0.0}, ka, kb);
    CHECK(A.a_mat.trace() == doctest::Approx(-(ka + kb)).epsilon(1e-14));

    Eigen::EigenSolver<Mat4> es(A.a_mat);
    std::vector<cplx> eigs(4);
    for (int i = 0; i < 4; ++i) eigs[i] = es.eigenvalues()(i);
    auto has = [&](cplx want) {
        for (const auto& e : eigs)
            if (std::abs(e - want) < 1e-10) return true;
        return false;
    };
    CHECK(has({-ka / 2, delta}));
    CHECK(has({-ka / 2, -delta}));
    CHECK(has({-kb / 2, omega_m}));
    CHECK(has({-kb / 2, -omega_m}));
}

TEST_CASE("drift_matrix: trace identity for arbitrary couplings") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const double ka = 1.0 + u(rng), kb = 0.5 * (u(rng) + 1.001);
        const auto A = drift_matrix(2.0 * u(rng), {u(rng), u(rng)}, ka, kb);
        CHECK(A.a_mat.trace() == doctest::Approx(-(ka + kb)).epsilon(1e-12));
    }
}

TEST_CASE("char_poly: undamped decoupled oscillators") {
    const auto cp = char_poly(1.0, {0.0, 0.0}, 0.0, 0.0);
    CHECK(cp.a1 == doctest::Approx(0.0));
    CHECK(cp.a2 == doctest::Approx(2.0));
    CHECK(cp.a3 == doctest::Approx(0.0));
    CHECK(cp.a4 == doctest::Approx(1.0));
}

TEST_CASE("char_poly matches det(lambda I - A) at sample points") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        const double delta = 3.0 * u(rng);
        const cplx g{0.6 * u(rng), 0.6 * u(rng)};
        const double ka = 1.0 + u(rng);
        const double kb = 0.3 * (u(rng) + 1.001);
        const auto cp = char_poly(delta, g, ka, kb);
        CHECK(cp.a1 == doctest::Approx(ka + kb).epsilon(1e-12));  // trace identity
        const auto A = drift_matrix(delta, g, ka, kb);
        for (int s = 0; s < 20; ++s) {
            const double lam = 4.0 * u(rng);
            const double det =
                (Mat4::Identity() * lam - A.a_mat).determinant();
            const double poly =
                (((lam + cp.a1) * lam + cp.a2) * lam + cp.a3) * lam + cp.a4;
            const double scale = std::max({std::abs(det), std::abs(poly), 1e-6});
            CHECK(std::abs(det - poly) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("routh_hurwitz: hand-checkable cases") {
    CHECK(routh_hurwitz(2.0, 2.0, 1.0, 0.1));
    CHECK(!routh_hurwitz(2.0, 2.0, 1.0, -0.1));  // a4 < 0
    CHECK(!routh_hurwitz(-1.0, 2.0, 1.0, 0.1));
    CHECK(!routh_hurwitz(1.0, 1.0, 1.0, 1.0));   // 1 > 1 + 1 fails
}

TEST_CASE("routh_hurwitz agrees with eigenvalues (spot sample)") {
    const auto res = check_routh_vs_eigenvalues(1500, 21);
    INFO(res.detail);
    CHECK(res.pass);
}

TEST_CASE("classify_region: undriven system is single stable") {
    SystemParams p;
    p.omega_drive = 0.0;
    p.delta_c = -1.0;
    p.g0 = 0.005;
    p.chi = 1e-5;
    p.kappa_a = 0.8;
    p.kappa_b = 1e-5;
    const auto rep = classify_region(p);
    CHECK(rep.region == StabilityRegion::SingleStable);
    CHECK(rep.rh_pass);
    CHECK(rep.max_real_eig < 0.0);
}

TEST_CASE("classify_region: strong blue-detuned drive is not single-stable") {
    SystemParams p;
    p.delta_c = -1.0;
    p.g0 = 0.005;
    p.chi = 0.0;
    p.omega_drive = 50.0;
    p.kappa_a = 0.8;
    p.kappa_b = 1e-5;
    const auto rep = classify_region(p);
    CHECK(rep.region != StabilityRegion::SingleStable);

    // Moderate red detuning on the same slice: single-valued and stable.
    p.delta_c = 1.0;
    const auto red = classify_region(p);
    CHECK((red.region == StabilityRegion::SingleStable ||
           red.region == StabilityRegion::Multivalued));
    CHECK(red.region == StabilityRegion::SingleStable);
}

TEST_CASE("diffusion_matrix: vacuum and thermal baths") {
    const auto vac = diffusion_matrix(0.8, 1e-5, 0.0, 0.0, {0.0, 0.0});
    CHECK(vac.d_mat(0, 0) == doctest::Approx(0.4));
    CHECK(vac.d_mat(1, 1) == doctest::Approx(0.4));
    CHECK(vac.d_mat(2, 2) == doctest::Approx(0.5e-5));
    CHECK(vac.d_mat(3, 3) == doctest::Approx(0.5e-5));
    CHECK(vac.d_mat(0, 1) == 0.0);

    const auto hot = diffusion_matrix(0.8, 1e-5, 3000.0, 0.0, {0.0, 0.0});
    CHECK(hot.d_mat(2, 2) == doctest::Approx(1e-5 * 3000.5).epsilon(1e-12));
}

TEST_CASE("diffusion_matrix: squeezed-vacuum variance identity") {
    const double s = 0.45, ka = 1.1;
    const double n_ss = std::sinh(s) * std::sinh(s);
    const cplx m_ss = std::sinh(s) * std::cosh(s);
    const auto D = diffusion_matrix(ka, 1e-5, 0.0, n_ss, m_ss);
    CHECK(D.d_mat(0, 0) == doctest::Approx(0.5 * ka * std::exp(2.0 * s)).epsilon(1e-12));
    CHECK(D.d_mat(1, 1) == doctest::Approx(0.5 * ka * std::exp(-2.0 * s)).epsilon(1e-12));
    CHECK(D.d_mat(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("diffusion_matrix rejects unphysical baths") {
    CHECK_THROWS_AS(diffusion_matrix(1.0, 1e-5, 0.0, 0.1, {0.5, 0.0}),
                    BathPhysicalityError);
}

TEST_CASE("lyapunov_steady: pure decay to vacuum") {
    DriftMatrix A;
    A.a_mat = -0.5 * Mat4::Identity();
    DiffusionMatrix D;
    D.d_mat = 0.5 * Mat4::Identity();
    const auto V = lyapunov_steady(A, D);
    CHECK((V.v_mat - 0.5 * Mat4::Identity()).norm() <= 1e-12);
}

TEST_CASE("lyapunov_steady: decoupled thermal equilibrium") {
    const double nth = 12.0;
    const auto A = drift_matrix(1.3, {0.0, 0.0}, 0.7, 0.01);
    const auto D = diffusion_matrix(0.7, 0.01, nth, 0.0, {0.0, 0.0});
    const auto V = lyapunov_steady(A, D);
    Mat4 expect = Mat4::Identity() * 0.5;
    expect(2, 2) = expect(3, 3) = nth + 0.5;
    CHECK((V.v_mat - expect).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(uncertainty_ok(V));
}

TEST_CASE("lyapunov_steady refuses unstable drift") {
    DriftMatrix A;
    A.a_mat = Mat4::Identity();
    DiffusionMatrix D;
    D.d_mat = Mat4::Identity();
    CHECK_THROWS_AS(lyapunov_steady(A, D), NoSteadyState);
}

TEST_CASE("moment_rhs: source structure at X = 0, matched reservoir") {
    MomentSystem s;
    s.delta_sd = 1.0;
    s.g_sd = {0.2, 0.1};
    s.kappa_a = 0.8;
    s.kappa_b = 1e-5;
    s.n_th = 0.0;
    const auto dx = moment_rhs(MomentVector{}, s);
    for (int i = 0; i < 10; ++i) {
        if (i == 6) {
            CHECK(std::abs(dx.x(6) - cplx(0.0, 1.0) * std::conj(s.g_sd)) <= 1e-15);
        } else if (i == 7) {
            CHECK(std::abs(dx.x(7) + cplx(0.0, 1.0) * s.g_sd) <= 1e-15);
        } else {
            CHECK(std::abs(dx.x(i)) == 0.0);
        }
    }
}

TEST_CASE("moment_rhs preserves conjugate pairing") {
    MomentSystem s;
    s.delta_sd = 0.9;
    s.g_sd = {0.25, -0.15};
    s.kappa_a = 0.7;
    s.kappa_b = 0.02;
    s.n_th = 1.5;
    s.n_ss = 0.1;
    s.m_ss = {0.2, 0.1};

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    MomentVector x;
    x.x(0) = std::abs(u(rng));
    x.x(1) = std::abs(u(rng));
    x.x(2) = {u(rng), u(rng)};
    x.x(3) = std::conj(x.x(2));
    x.x(4) = {u(rng), u(rng)};
    x.x(5) = std::conj(x.x(4));
    x.x(6) = {u(rng), u(rng)};
    x.x(7) = std::conj(x.x(6));
    x.x(8) = {u(rng), u(rng)};
    x.x(9) = std::conj(x.x(8));
    REQUIRE(x.conjugate_paired());

    const auto dx = moment_rhs(x, s);
    MomentVector stepped;
    stepped.x = x.x + 0.01 * dx.x;
    CHECK(stepped.conjugate_paired(1e-12));
}

TEST_CASE("integrate_moments reaches the Lyapunov steady state") {
    const double delta = 1.1, ka = 0.8, kb = 0.15, nth = 0.4;
    const cplx g{0.09, -0.04};
    MomentSystem s{delta, g, ka, kb, nth, 0.0, {0.0, 0.0}};

    const auto ir = integrate_moments(MomentVector{}, s, 5e3);
    CHECK(ir.converged);
    CHECK(ir.x.conjugate_paired(1e-9));
    CHECK(ir.x.x(0).real() >= 0.0);

    const auto V1 = moments_to_covariance(ir.x);
    const auto A = drift_matrix(delta, g, ka, kb);
    const auto D = diffusion_matrix(ka, kb, nth, 0.0, {0.0, 0.0});
    const auto V2 = lyapunov_steady(A, D);
    CHECK((V1.v_mat - V2.v_mat).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("integrate_moments diverges on a single-valued unstable point") {
    // Blue-detuned coordinate of the reported stability map (region I).
    SystemParams p;
    p.delta_c = -0.5;
    p.g0 = 0.005;
    p.chi = 0.0;
    p.omega_drive = 50.0;
    p.kappa_a = 0.8;
    p.kappa_b = 1e-5;
    const auto rep = classify_region(p);
    REQUIRE(rep.region == StabilityRegion::SingleUnstable);

    const auto rs = semiclassical_roots(p);
    const auto amp = steady_amplitudes(p, rs);
    const auto sf = squeeze_frame(p, amp, displaced_frame(p, amp));
    MomentSystem s{sf.delta_sd, sf.g_sd, p.kappa_a, p.kappa_b, 0.0, sf.n_ss, sf.m_ss};
    CHECK_THROWS_AS(integrate_moments(MomentVector{}, s, 1e6), NoSteadyState);
}
