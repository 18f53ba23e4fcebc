#include "kerropt/frames.hpp"

#include <cmath>
#include <numbers>

#include "kerropt/errors.hpp"

namespace kerropt {

DisplacedFrame displaced_frame(const SystemParams& p, const Amplitudes& amp) {
    DisplacedFrame df;
    df.delta_d = p.delta_c + 4.0 * p.chi * amp.y +
                 p.g0 * (amp.beta_ss + std::conj(amp.beta_ss)).real();
    df.g_d = p.g0 * amp.alpha_ss;
    return df;
}

SqueezeAngles squeeze_params(const Amplitudes& amp, const DisplacedFrame& df, double chi) {
    SqueezeAngles sa;
    const cplx alpha2 = amp.alpha_ss * amp.alpha_ss;
    // Full-quadrant angle of alpha_ss^2; the principal arctangent loses
    // the quadrant and leaves the two-photon coefficient uncancelled.
    sa.phi = std::atan2(alpha2.imag(), alpha2.real());

    const double kerr_shift = 2.0 * chi * amp.y;
    if (kerr_shift == 0.0) {
        sa.r = 0.0;
        return sa;
    }
    if (df.delta_d == 0.0 || std::abs(kerr_shift / df.delta_d) >= 1.0)
        throw SqueezeDomainError("|2 chi |alpha|^2 / delta_d| >= 1: no real squeezing "
                                 "amplitude cancels the two-photon terms");
    sa.r = 0.5 * std::atanh(kerr_shift / df.delta_d);
    return sa;
}

EffectiveParams effective_params(const DisplacedFrame& df, double r, double phi,
                                 const Amplitudes& amp, double chi) {
    const double ar = amp.alpha_ss.real();
    const double ai = amp.alpha_ss.imag();
    const double ch2 = std::cosh(2.0 * r);
    const double sh2 = std::sinh(2.0 * r);
    const cplx alpha2 = amp.alpha_ss * amp.alpha_ss;
    const cplx e_iphi = std::polar(1.0, phi);
    const double shr = std::sinh(r);
    const double chr = std::cosh(r);

    EffectiveParams ep;
    ep.delta_sd = df.delta_d * ch2 -
                  2.0 * chi * (ar * ar - ai * ai) * sh2 * std::cos(phi) -
                  4.0 * chi * ar * ai * sh2 * std::sin(phi);
    ep.g_sd = df.g_d * chr - std::conj(df.g_d) * e_iphi * shr;
    ep.residual_r = chi * alpha2 * std::conj(e_iphi) * shr * shr +
                    chi * std::conj(alpha2) * e_iphi * chr * chr -
                    0.5 * df.delta_d * sh2;
    return ep;
}

namespace {

// Effective bath parameters in terms of the phase misalignment
// psi = theta_e - phi - pi (psi = 0 at the matched point). Algebraically
// identical to the Bogoliubov composition written in frames.hpp, but
// grouped through sinh(r -/+ r_e) difference identities so the matched
// and anti-aligned cancellations happen to machine precision instead of
// through e^{4r}-sized intermediates.
BathParams bath_params_aligned(double r, double phi, double r_e, double psi) {
    const double s2r = std::sinh(2.0 * r), c2r = std::cosh(2.0 * r);
    const double s2e = std::sinh(2.0 * r_e);
    const double cpsi = std::cos(psi), spsi = std::sin(psi);

    BathParams bp;
    if (std::sinh(r) * std::sinh(r_e) >= 0.0) {
        const double diff = std::sinh(r - r_e);
        bp.n_ss = diff * diff + 0.5 * s2r * s2e * (1.0 - cpsi);
    } else {
        const double sum = std::sinh(r + r_e);
        bp.n_ss = sum * sum - 0.5 * s2r * s2e * (1.0 + cpsi);
    }

    double re_part;  // cosh(2r_e) sinh(2r) - sinh(2r_e) cosh(2r) cos(psi)
    if (cpsi >= 0.0) {
        re_part = std::sinh(2.0 * (r - r_e)) + s2e * c2r * (1.0 - cpsi);
    } else {
        re_part = std::sinh(2.0 * (r + r_e)) - s2e * c2r * (1.0 + cpsi);
    }
    bp.m_ss = 0.5 * std::polar(1.0, -phi) * cplx(re_part, s2e * spsi);
    return bp;
}

}  // namespace

BathParams bath_params(double r, double phi, double r_e, double theta_e) {
    return bath_params_aligned(r, phi, r_e, theta_e - phi - std::numbers::pi);
}

SqueezeFrame squeeze_frame(const SystemParams& p, const Amplitudes& amp,
                           const DisplacedFrame& df) {
    const SqueezeAngles sa = squeeze_params(amp, df, p.chi);
    const EffectiveParams ep = effective_params(df, sa.r, sa.phi, amp, p.chi);

    // Matched mode imposes theta_e = phi + pi as an exact relation
    // (psi = 0) rather than through a rounded theta_e value.
    const BathParams bp =
        (p.reservoir_mode == ReservoirMode::Matched)
            ? bath_params_aligned(sa.r, sa.phi, sa.r, 0.0)
            : bath_params(sa.r, sa.phi, p.r_e, p.theta_e);

    SqueezeFrame sf;
    sf.r = sa.r;
    sf.phi = sa.phi;
    sf.delta_sd = ep.delta_sd;
    sf.g_sd = ep.g_sd;
    sf.residual_r = ep.residual_r;
    sf.n_ss = bp.n_ss;
    sf.m_ss = bp.m_ss;
    return sf;
}

}  // namespace kerropt
