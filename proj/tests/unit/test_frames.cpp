#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "kerropt/errors.hpp"
#include "kerropt/frames.hpp"
#include "kerropt/selfcheck.hpp"
#include "kerropt/steady_state.hpp"

using namespace kerropt;

TEST_CASE("displaced_frame: no nonlinearity, no coupling") {
    SystemParams p;
    p.delta_c = 0.7;
    p.chi = 0.0;
    p.g0 = 0.0;
    p.kappa_a = 1.0;
    Amplitudes amp;
    amp.alpha_ss = {3.0, -1.0};
    amp.y = 10.0;
    const auto df = displaced_frame(p, amp);
    CHECK(df.delta_d == doctest::Approx(0.7));
    CHECK(std::abs(df.g_d) == 0.0);
}

TEST_CASE("displaced_frame: direct evaluation at alpha = 2i") {
    SystemParams p;
    p.delta_c = 1.0;
    p.chi = 0.01;
    p.g0 = 0.005;
    p.kappa_a = 1.0;
    p.kappa_b = 1e-4;
    Amplitudes amp;
    amp.alpha_ss = {0.0, 2.0};
    amp.y = 4.0;
    amp.beta_ss = -cplx(0.0, 1.0) * p.g0 * amp.y / (cplx(0.0, 1.0) + 0.5 * p.kappa_b);
    const auto df = displaced_frame(p, amp);
    CHECK(df.delta_d ==
          doctest::Approx(1.16 + 2.0 * p.g0 * amp.beta_ss.real()).epsilon(1e-12));
    CHECK(df.g_d.real() == doctest::Approx(0.0));
    CHECK(df.g_d.imag() == doctest::Approx(0.01));
}

TEST_CASE("squeeze_params: chi = 0 gives r = 0 and exact cancellation") {
    Amplitudes amp;
    amp.alpha_ss = {1.5, -2.5};
    amp.y = std::norm(amp.alpha_ss);
    DisplacedFrame df;
    df.delta_d = 0.4;
    const auto sa = squeeze_params(amp, df, 0.0);
    CHECK(sa.r == 0.0);
    const cplx a2 = amp.alpha_ss * amp.alpha_ss;
    CHECK(sa.phi == doctest::Approx(std::atan2(a2.imag(), a2.real())));
    const auto ep = effective_params(df, sa.r, sa.phi, amp, 0.0);
    CHECK(std::abs(ep.residual_r) == 0.0);
}

TEST_CASE("squeeze_params: real positive amplitude has phi = 0") {
    Amplitudes amp;
    amp.alpha_ss = {2.0, 0.0};
    amp.y = 4.0;
    DisplacedFrame df;
    df.delta_d = 1.0;
    const auto sa = squeeze_params(amp, df, 1e-3);
    CHECK(sa.phi == doctest::Approx(0.0));
}

TEST_CASE("squeeze_params: domain error outside |tanh| < 1") {
    Amplitudes amp;
    amp.alpha_ss = {2.0, 0.0};
    amp.y = 4.0;
    DisplacedFrame df;
    df.delta_d = 1e-3;  // 2 chi y / delta_d = 8 >> 1
    CHECK_THROWS_AS(squeeze_params(amp, df, 1e-3), SqueezeDomainError);
    df.delta_d = 0.0;
    CHECK_THROWS_AS(squeeze_params(amp, df, 1e-3), SqueezeDomainError);
}

TEST_CASE("effective_params: r = 0 leaves the displaced frame untouched") {
    Amplitudes amp;
    amp.alpha_ss = {1.0, 1.0};
    amp.y = 2.0;
    DisplacedFrame df;
    df.delta_d = 0.9;
    df.g_d = {0.3, -0.1};
    const double chi = 2e-3;
    const auto ep = effective_params(df, 0.0, 0.0, amp, chi);
    CHECK(ep.delta_sd == doctest::Approx(0.9));
    CHECK(ep.g_sd.real() == doctest::Approx(0.3));
    CHECK(ep.g_sd.imag() == doctest::Approx(-0.1));
    const cplx expect = chi * std::conj(amp.alpha_ss * amp.alpha_ss);
    CHECK(ep.residual_r.real() == doctest::Approx(expect.real()));
    CHECK(ep.residual_r.imag() == doctest::Approx(expect.imag()));
}

TEST_CASE("two-photon cancellation on random accepted points") {
    const auto res = check_two_photon_cancellation(500, 7);
    INFO(res.detail);
    CHECK(res.pass);
}

TEST_CASE("bath_params: matched reservoir nulls the effective bath") {
    for (double r : {-0.4, -0.05, 0.0, 0.2, 0.7}) {
        for (double phi : {-2.0, 0.0, 1.3}) {
            const auto bp = bath_params(r, phi, r, phi + std::numbers::pi);
            CHECK(std::abs(bp.n_ss) <= 1e-13);
            CHECK(std::abs(bp.m_ss) <= 1e-13);
        }
    }
}

TEST_CASE("bath_params: unsqueezed reservoir sees the frame squeezing") {
    const double r = 0.35, phi = 0.9;
    const auto bp = bath_params(r, phi, 0.0, 0.0);
    CHECK(bp.n_ss == doctest::Approx(std::sinh(r) * std::sinh(r)).epsilon(1e-12));
    CHECK(std::abs(bp.m_ss) ==
          doctest::Approx(std::sinh(r) * std::cosh(r)).epsilon(1e-12));
    // At r = 0 the transformation is the identity and m_ss must reduce
    // to the reservoir's own two-photon correlator.
    const double re = 0.25, te = 1.1;
    const auto id = bath_params(0.0, phi, re, te);
    CHECK(id.n_ss == doctest::Approx(std::sinh(re) * std::sinh(re)).epsilon(1e-12));
    const cplx m_expect = std::sinh(re) * std::cosh(re) * std::polar(1.0, -te);
    CHECK(id.m_ss.real() == doctest::Approx(m_expect.real()).epsilon(1e-12));
    CHECK(id.m_ss.imag() == doctest::Approx(m_expect.imag()).epsilon(1e-12));
}

TEST_CASE("bath_params: |m_ss| matches the factorized product form") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 10000; ++k) {
        const double r = 0.8 * u(rng);
        const double phi = std::numbers::pi * u(rng);
        const double re = 0.4 * (u(rng) + 1.0);
        const double te = std::numbers::pi * u(rng);
        const auto bp = bath_params(r, phi, re, te);

        const cplx e = std::polar(1.0, phi - te);
        const cplx factorized =
            (std::sinh(re) * std::cosh(r) + std::conj(e) * std::sinh(r) * std::cosh(re)) *
            (std::sinh(re) * std::sinh(r) + e * std::cosh(re) * std::cosh(r));
        CHECK(std::abs(bp.m_ss) ==
              doctest::Approx(std::abs(factorized)).epsilon(1e-10));

        // Physicality: |m|^2 <= n(n+1) with equality for this pure bath.
        CHECK(std::norm(bp.m_ss) <= bp.n_ss * (bp.n_ss + 1.0) + 1e-10);
    }
}

TEST_CASE("bath_params: even multiples of pi do not null the bath") {
    const double r = 0.3, phi = 0.6, re = 0.2;
    const auto bp = bath_params(r, phi, re, phi + 2.0 * std::numbers::pi);
    const double s = std::sinh(r + re);
    CHECK(bp.n_ss == doctest::Approx(s * s).epsilon(1e-10));
    CHECK(bp.n_ss > 0.1 * s * s);
}

TEST_CASE("matched reservoir nulling across random accepted points") {
    const auto res = check_matched_reservoir_nulling(500, 8);
    INFO(res.detail);
    CHECK(res.pass);
}

TEST_CASE("chi -> 0 continuity of the frame quantities") {
    SystemParams p;
    p.delta_c = 0.5;
    p.g0 = 0.005;
    p.omega_drive = 40.0;
    p.kappa_a = 0.9;
    p.kappa_b = 1e-5;

    // chi = 0 reference.
    p.chi = 0.0;
    auto rs = semiclassical_roots(p);
    REQUIRE(rs.single_valued());
    auto amp = steady_amplitudes(p, rs);
    auto df0 = displaced_frame(p, amp);
    auto sf0 = squeeze_frame(p, amp, df0);
    CHECK(sf0.r == 0.0);
    CHECK(sf0.delta_sd == doctest::Approx(df0.delta_d));
    CHECK(std::abs(sf0.g_sd - df0.g_d) == 0.0);

    double prev_gap = 1e300;
    for (int k = 2; k <= 7; ++k) {
        p.chi = std::pow(10.0, -double(k)) * 1e-3;
        rs = semiclassical_roots(p);
        REQUIRE(rs.single_valued());
        amp = steady_amplitudes(p, rs);
        const auto df = displaced_frame(p, amp);
        const auto sf = squeeze_frame(p, amp, df);
        const double gap = std::abs(sf.r) + std::abs(sf.delta_sd - df0.delta_d) +
                           std::abs(sf.g_sd - df0.g_d);
        CHECK(gap <= prev_gap * 1.001);
        prev_gap = gap;
    }
    // The residual gap at chi = 1e-10 is dominated by the O(chi*y) shift
    // of the fixed point itself.
    CHECK(prev_gap <= 1e-4);
}
