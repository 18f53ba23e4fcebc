#pragma once

#include <complex>

#include "kerropt/params.hpp"
#include "kerropt/steady_state.hpp"

namespace kerropt {

// Displaced-frame parameters: detuning shifted by the Kerr and
// radiation-pressure backaction, coupling linearized around alpha_ss.
struct DisplacedFrame {
    double delta_d = 0.0;
    cplx g_d{0.0, 0.0};
};

// Squeezed-frame parameters. (r, phi) cancel the two-photon terms;
// residual_r is the two-photon coefficient re-evaluated at (r, phi)
// and must be ~0 for every accepted point. (n_ss, m_ss) characterize
// the effective cavity bath after both transformations.
struct SqueezeFrame {
    double r = 0.0;
    double phi = 0.0;
    double delta_sd = 0.0;
    cplx g_sd{0.0, 0.0};
    cplx residual_r{0.0, 0.0};
    double n_ss = 0.0;
    cplx m_ss{0.0, 0.0};
};

DisplacedFrame displaced_frame(const SystemParams& p, const Amplitudes& amp);

// Squeezing amplitude and phase that zero the two-photon coefficient:
// phi = arg(alpha_ss^2) (full-quadrant), r = artanh(2 chi y / delta_d)/2.
// Throws SqueezeDomainError when |2 chi y / delta_d| >= 1 (including
// delta_d == 0 with chi*y != 0).
struct SqueezeAngles {
    double r = 0.0;
    double phi = 0.0;
};
SqueezeAngles squeeze_params(const Amplitudes& amp, const DisplacedFrame& df, double chi);

struct EffectiveParams {
    double delta_sd = 0.0;
    cplx g_sd{0.0, 0.0};
    cplx residual_r{0.0, 0.0};
};
EffectiveParams effective_params(const DisplacedFrame& df, double r, double phi,
                                 const Amplitudes& amp, double chi);

// Effective bath parameters seen by the cavity after the squeeze
// transformation, for a reservoir with squeezing (r_e, theta_e).
//
// n_ss follows the closed sum of squares; m_ss is the direct Bogoliubov
// composition of the reservoir squeezing with the frame squeezing,
//   m_ss = M cosh^2 r + M* e^{-2i phi} sinh^2 r
//        + (2N+1) e^{-i phi} sinh r cosh r,
// with N = sinh^2 r_e and M = sinh r_e cosh r_e e^{-i theta_e}. Both
// vanish identically at (r_e, theta_e) = (r, phi + n*pi) for odd n; for
// even n the squeezings add instead (n_ss = sinh^2(r + r_e)), so even
// multiples do not null the bath.
struct BathParams {
    double n_ss = 0.0;
    cplx m_ss{0.0, 0.0};
};
BathParams bath_params(double r, double phi, double r_e, double theta_e);

// Full frame computation for one accepted semiclassical point. Resolves
// Matched reservoirs to (r_e, theta_e) = (r, phi + pi). Throws
// SqueezeDomainError as squeeze_params does.
SqueezeFrame squeeze_frame(const SystemParams& p, const Amplitudes& amp,
                           const DisplacedFrame& df);

}  // namespace kerropt
