#pragma once

#include <complex>

#include "kerropt/dynamics.hpp"

namespace kerropt {

// Truncated-Fock-space integration of the two-mode Lindblad master
// equation; the covariance is read off the final density operator.
// Memory-heavy (cutoff_a*cutoff_b square complex matrices); intended as
// a test oracle, one evaluation at a time per worker.
struct FockOptions {
    int cutoff_a = 10;   // <= 25
    int cutoff_b = 10;   // <= 25
    double t_end = 400.0;
    double dt = 0.0;     // 0 = choose from the spectral-radius estimate
    double leak_tol = 1e-6;
};

struct FockProblem {
    // Quadratic Hamiltonian
    //   delta a+a + omega_m b+b + (g a+ + g* a)(b+ + b)
    //   + two_photon* a+a+ + two_photon a a            (optional term)
    double delta = 0.0;
    cplx g{0.0, 0.0};
    cplx two_photon{0.0, 0.0};  // coefficient of a^2; its conjugate multiplies a+^2
    // Cavity bath (N, M) in the master-equation convention and
    // mechanical thermal bath.
    double kappa_a = 1.0;
    double kappa_b = 0.1;
    double bath_n = 0.0;
    cplx bath_m{0.0, 0.0};
    double n_th = 0.0;
};

struct FockResult {
    CovarianceMatrix cov;
    double mean_na = 0.0;
    double mean_nb = 0.0;
    double t_reached = 0.0;
    bool converged = false;
};

// Integrates to the steady state (relative covariance change < 1e-10
// over one mechanical period, or t_end). Throws OracleCutoffError when
// the top two levels of either mode carry more than leak_tol population
// or a mean occupation reaches cutoff/4.
FockResult fock_steady_state(const FockProblem& prob, const FockOptions& opt);

// Oracle for a squeezed-frame point of the optomechanical pipeline:
// reduced Hamiltonian (no two-photon term) with bath (n_ss, m_ss).
FockResult fock_oracle(double delta_sd, cplx g_sd, double kappa_a, double kappa_b,
                       double n_th, double n_ss, cplx m_ss, const FockOptions& opt);

}  // namespace kerropt
