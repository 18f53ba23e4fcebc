#include "doctest.h"

#include <cmath>
#include <random>

#include "kerropt/entanglement.hpp"
#include "kerropt/errors.hpp"
#include "kerropt/selfcheck.hpp"

using namespace kerropt;

namespace {

CovarianceMatrix tmsv(double s) {
    CovarianceMatrix v;
    const double c2 = 0.5 * std::cosh(2.0 * s);
    const double s2 = 0.5 * std::sinh(2.0 * s);
    v.v_mat << c2, 0, s2, 0,
               0, c2, 0, -s2,
               s2, 0, c2, 0,
               0, -s2, 0, c2;
    return v;
}

Mat2 rotation(double theta) {
    Mat2 r;
    r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    return r;
}

}  // namespace

TEST_CASE("log_negativity: product vacuum is separable") {
    CovarianceMatrix v;
    v.v_mat = 0.5 * Mat4::Identity();
    const auto rec = log_negativity(v);
    CHECK(rec.eta_minus == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rec.e_n == 0.0);
    CHECK(rec.mean_phonon == doctest::Approx(0.0));
    CHECK(rec.mean_photon == doctest::Approx(0.0));
}

TEST_CASE("log_negativity: two-mode squeezed vacuum gives E_N = 2s") {
    for (double s : {0.1, 0.5, 1.0}) {
        const auto rec = log_negativity(tmsv(s));
        CHECK(rec.eta_minus == doctest::Approx(0.5 * std::exp(-2.0 * s)).epsilon(1e-12));
        CHECK(rec.e_n == doctest::Approx(2.0 * s).epsilon(1e-12));
    }
    CHECK(check_tmsv_analytic().pass);
}

TEST_CASE("log_negativity: product thermal state is separable") {
    CovarianceMatrix v;
    v.v_mat = Mat4::Zero();
    v.v_mat(0, 0) = v.v_mat(1, 1) = 3.0 + 0.5;
    v.v_mat(2, 2) = v.v_mat(3, 3) = 7.0 + 0.5;
    const auto rec = log_negativity(v);
    CHECK(rec.e_n == 0.0);
    CHECK(rec.mean_photon == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rec.mean_phonon == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("log_negativity: local rotations leave E_N unchanged") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const auto base = tmsv(0.6);
    const auto ref = log_negativity(base);
    for (int k = 0; k < 50; ++k) {
        Mat4 local = Mat4::Zero();
        local.topLeftCorner<2, 2>() = rotation(u(rng));
        local.bottomRightCorner<2, 2>() = rotation(u(rng));
        CovarianceMatrix v;
        v.v_mat = local * base.v_mat * local.transpose();
        const auto rec = log_negativity(v);
        CHECK(rec.e_n == doctest::Approx(ref.e_n).epsilon(1e-10));
    }
}

TEST_CASE("log_negativity: scaling away the correlations kills E_N") {
    const auto base = tmsv(0.8);
    double prev = log_negativity(base).e_n;
    CHECK(prev > 0.0);
    for (double scale : {0.8, 0.6, 0.4, 0.2, 0.05, 0.0}) {
        CovarianceMatrix v = base;
        v.v_mat.topRightCorner<2, 2>() *= scale;
        v.v_mat.bottomLeftCorner<2, 2>() *= scale;
        const auto rec = log_negativity(v);
        CHECK(rec.e_n <= prev + 1e-12);
        prev = rec.e_n;
    }
    CHECK(prev == 0.0);
}

TEST_CASE("log_negativity: E_N responds continuously to V perturbations") {
    const auto base = tmsv(0.5);
    const double ref = log_negativity(base).e_n;
    for (double eps : {1e-6, 1e-8}) {
        CovarianceMatrix v = base;
        v.v_mat(0, 0) += eps;
        v.v_mat(2, 2) += eps;
        const double shifted = log_negativity(v).e_n;
        CHECK(std::abs(shifted - ref) <= 10.0 * eps);
    }
}

TEST_CASE("log_negativity rejects covariances violating the uncertainty bound") {
    CovarianceMatrix v;
    v.v_mat = 0.1 * Mat4::Identity();  // tighter than vacuum in all quadratures
    CHECK_THROWS_AS(log_negativity(v), InvariantViolation);
}
