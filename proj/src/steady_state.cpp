#include "kerropt/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kerropt/errors.hpp"

namespace kerropt {

namespace {

constexpr double abs_floor = 1e-250;

// One Newton step on the original (unscaled) cubic.
cplx polish_root(const CubicCoefficients& co, cplx y) {
    const cplx f = ((co.a * y + co.b) * y + co.c) * y + co.d;
    const cplx df = (3.0 * co.a * y + 2.0 * co.b) * y + co.c;
    if (std::abs(df) < abs_floor) return y;
    return y - f / df;
}

bool is_real(cplx y) { return std::abs(y.imag()) <= 1e-8 * (1.0 + std::abs(y)); }

// Admissible roots are nonnegative; tiny negative values from roundoff
// (e.g. the y = 0 root of the undriven system) are clamped.
bool admissible(double y) { return y >= -1e-12 * (1.0 + std::abs(y)); }

RootSet classify(const std::array<cplx, 3>& ys, double eta) {
    RootSet rs;
    rs.discriminant_eta = eta;

    double ymax = 0.0;
    for (const auto& y : ys) ymax = std::max(ymax, std::abs(y));

    std::vector<double> retained;
    int admissible_count = 0;  // counted with multiplicity
    bool all_real = true;
    for (const auto& y : ys) {
        if (!is_real(y)) {
            all_real = false;
            continue;
        }
        const double yr = y.real();
        if (!admissible(yr)) continue;
        ++admissible_count;
        retained.push_back(std::max(yr, 0.0));
    }

    std::sort(retained.begin(), retained.end());
    // Collapse numerically coincident values.
    std::vector<double> distinct;
    for (double y : retained) {
        if (distinct.empty() || y - distinct.back() > 1e-7 * (1.0 + std::abs(y)))
            distinct.push_back(y);
    }
    rs.roots = std::move(distinct);

    const bool triple = all_real && rs.roots.size() == 1 && admissible_count == 3 &&
                        std::abs(ys[0] - ys[1]) <= 1e-7 * (1.0 + ymax) &&
                        std::abs(ys[1] - ys[2]) <= 1e-7 * (1.0 + ymax) &&
                        std::abs(ys[0] - ys[2]) <= 1e-7 * (1.0 + ymax);
    if (triple)
        rs.multiplicity = RootMultiplicity::TripleReal;
    else if (admissible_count == 1)
        rs.multiplicity = RootMultiplicity::SingleReal;
    else
        rs.multiplicity = RootMultiplicity::MultiReal;
    return rs;
}

}  // namespace

bool CubicCoefficients::degenerate() const {
    return a_scale <= abs_floor || std::abs(a) <= 1e-12 * a_scale;
}

CubicCoefficients cubic_coefficients(const SystemParams& p) {
    const double wm2 = omega_m * omega_m;
    const double denom = 0.25 * p.kappa_b * p.kappa_b + wm2;
    const double g2 = p.g0 * p.g0;

    const double t1 = 4.0 * g2 * g2 * wm2 / (denom * denom);
    const double t2 = 8.0 * p.chi * g2 * omega_m / denom;
    const double t3 = 4.0 * p.chi * p.chi;

    CubicCoefficients co;
    co.a = t1 - t2 + t3;
    co.b = -4.0 * p.delta_c * g2 * omega_m / denom + 4.0 * p.chi * p.delta_c;
    co.c = 0.25 * p.kappa_a * p.kappa_a + p.delta_c * p.delta_c;
    co.d = -p.omega_drive * p.omega_drive;
    co.a_scale = t1 + t2 + t3;
    return co;
}

namespace {

// q/2, p/3 and eta suffer severe cancellation when a ~ g0^4 makes the
// cubic badly scaled; the whole Cardano chain runs in extended
// precision, with the final Newton polish bringing the roots to double
// accuracy on the original coefficients.
struct Depressed {
    long double p = 0.0L;
    long double q = 0.0L;
    long double eta = 0.0L;
};

Depressed depress(const CubicCoefficients& co) {
    const long double a = co.a, b = co.b, c = co.c, d = co.d;
    Depressed dp;
    dp.p = (3.0L * a * c - b * b) / (3.0L * a * a);
    dp.q = (-2.0L * b * b * b + 9.0L * a * b * c - 27.0L * a * a * d) /
           (27.0L * a * a * a);
    dp.eta = 0.25L * dp.q * dp.q + dp.p * dp.p * dp.p / 27.0L;
    return dp;
}

}  // namespace

std::array<cplx, 3> cardano_roots(const CubicCoefficients& co) {
    using lcplx = std::complex<long double>;
    const Depressed dp = depress(co);

    const lcplx sqrt_eta = std::sqrt(lcplx(dp.eta, 0.0L));
    // Pick the better-conditioned branch, then pair the second cube root
    // through u*v = -p/3 so both stay on consistent branches.
    lcplx w = 0.5L * dp.q + sqrt_eta;
    if (std::abs(0.5L * dp.q - sqrt_eta) > std::abs(w)) w = 0.5L * dp.q - sqrt_eta;
    const lcplx u = std::pow(w, 1.0L / 3.0L);
    const lcplx v = (std::abs(u) > 1e-280L) ? lcplx(-dp.p / 3.0L, 0.0L) / u
                                            : lcplx(0.0L, 0.0L);

    const long double pi_l = std::numbers::pi_v<long double>;
    const lcplx z = std::polar(1.0L, 2.0L * pi_l / 3.0L);
    const long double shift = -static_cast<long double>(co.b) / (3.0L * co.a);

    const long double a = co.a, b = co.b, c = co.c, d = co.d;
    std::array<cplx, 3> ys;
    lcplx zu = z * u;        // z^1 u
    lcplx zv = z * z * v;    // z^2 v
    for (int n = 0; n < 3; ++n) {
        lcplx y = shift + zu + zv;
        // One Newton step, kept only when it reduces the residual.
        const lcplx f = ((a * y + b) * y + c) * y + d;
        const lcplx df = (3.0L * a * y + 2.0L * b) * y + c;
        if (std::abs(df) > 1e-280L) {
            const lcplx y2 = y - f / df;
            const lcplx f2 = ((a * y2 + b) * y2 + c) * y2 + d;
            if (std::abs(f2) <= std::abs(f)) y = y2;
        }
        ys[n] = cplx(static_cast<double>(y.real()), static_cast<double>(y.imag()));
        zu *= z;
        zv *= z * z;
    }
    return ys;
}

RootSet solve_cubic(const CubicCoefficients& co) {
    if (co.degenerate())
        throw DegenerateCubic("cubic leading coefficient vanishes; solve the reduced equation");
    return classify(cardano_roots(co), static_cast<double>(depress(co).eta));
}

RootSet solve_reduced(const CubicCoefficients& co) {
    RootSet rs;
    rs.discriminant_eta = std::numeric_limits<double>::quiet_NaN();

    std::vector<cplx> candidates;
    // b is the same cancellation-prone combination as a; compare against
    // the linear term on the scale of the linear root.
    const double y_lin = (std::abs(co.c) > abs_floor) ? std::abs(co.d / co.c) : 0.0;
    const bool b_negligible =
        std::abs(co.b) * y_lin * y_lin <= 1e-12 * std::max(std::abs(co.c) * y_lin, std::abs(co.d)) ||
        std::abs(co.b) <= abs_floor;

    if (b_negligible) {
        if (std::abs(co.c) <= abs_floor)
            throw DegenerateCubic("fixed-point equation degenerates entirely");
        candidates.emplace_back(-co.d / co.c, 0.0);
    } else {
        const double disc = co.c * co.c - 4.0 * co.b * co.d;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            const double qq = -0.5 * (co.c + std::copysign(sq, co.c));
            candidates.emplace_back(qq / co.b, 0.0);
            if (std::abs(qq) > abs_floor) candidates.emplace_back(co.d / qq, 0.0);
        }
    }

    std::vector<double> retained;
    for (auto y : candidates) {
        y = polish_root(co, y);
        if (!is_real(y) || !admissible(y.real())) continue;
        retained.push_back(std::max(y.real(), 0.0));
    }
    std::sort(retained.begin(), retained.end());
    rs.roots = retained;
    rs.multiplicity = (retained.size() == 1) ? RootMultiplicity::SingleReal
                                             : RootMultiplicity::MultiReal;
    return rs;
}

RootSet semiclassical_roots(const SystemParams& p) {
    const CubicCoefficients co = cubic_coefficients(p);
    return co.degenerate() ? solve_reduced(co) : solve_cubic(co);
}

Amplitudes steady_amplitudes(const SystemParams& p, const RootSet& rs) {
    if (!rs.single_valued() || rs.roots.empty())
        throw MultistableRegime("semiclassical fixed point is not single-valued");

    const double y = rs.roots.front();
    const cplx i_unit(0.0, 1.0);

    Amplitudes amp;
    amp.y = y;
    amp.beta_ss = -i_unit * p.g0 * y / (i_unit * omega_m + 0.5 * p.kappa_b);
    const double beta_real_sum = 2.0 * amp.beta_ss.real();
    const cplx bracket =
        0.5 * p.kappa_a + i_unit * (p.delta_c + p.g0 * beta_real_sum + 2.0 * p.chi * y);
    amp.alpha_ss = (p.omega_drive == 0.0) ? cplx(0.0, 0.0)
                                          : i_unit * p.omega_drive / bracket;
    return amp;
}

std::array<double, 2> fixed_point_residual(const SystemParams& p, const Amplitudes& amp) {
    const cplx i_unit(0.0, 1.0);
    const cplx alpha = amp.alpha_ss;
    const cplx beta = amp.beta_ss;
    const double y = std::norm(alpha);

    const cplx res_a = -(0.5 * p.kappa_a + i_unit * p.delta_c +
                         i_unit * p.g0 * (std::conj(beta) + beta)) * alpha -
                       2.0 * i_unit * p.chi * y * alpha + i_unit * p.omega_drive;
    const cplx res_b = -(i_unit * omega_m + 0.5 * p.kappa_b) * beta - i_unit * p.g0 * y;
    return {std::abs(res_a), std::abs(res_b)};
}

}  // namespace kerropt
