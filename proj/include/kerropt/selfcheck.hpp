#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kerropt/params.hpp"

namespace kerropt {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Oracle cross-checks shared by the CLI `selftest` subcommand and the
// acceptance suite. All are deterministic for a fixed seed.

// Draws random parameter sets, keeps accepted (single-valued,
// squeeze-valid) points, and checks the independently evaluated
// two-photon coefficient |R(r, phi)| <= 1e-10 * max(1, |delta_d|).
CheckResult check_two_photon_cancellation(std::size_t n_points, std::uint64_t seed);

// Same sampling, Matched reservoirs: n_ss <= 1e-12 and |m_ss| <= 1e-12.
CheckResult check_matched_reservoir_nulling(std::size_t n_points, std::uint64_t seed);

// Cardano + one Newton polish vs companion-matrix eigenvalues on random
// cubics with a in [1e-9, 1]; all three complex roots matched to
// relative 1e-8.
CheckResult check_cardano_vs_companion(std::size_t n_cubics, std::uint64_t seed);

// Routh-Hurwitz verdict vs the sign of the maximal real eigenvalue on
// random structured drift matrices (boundary band |Re| < 1e-9 skipped).
CheckResult check_routh_vs_eigenvalues(std::size_t n_matrices, std::uint64_t seed);

// Logarithmic negativity of the two-mode squeezed vacuum equals 2s.
CheckResult check_tmsv_analytic();

// Lyapunov vs moment-integration vs truncated-Fock agreement on one
// moderately damped point (quick smoke version of the three-route check).
CheckResult check_three_route_point();

// Random accepted SystemParams used by the checks above; exposed so the
// acceptance suite can reuse the sampler.
std::vector<SystemParams> sample_accepted_points(std::size_t n, std::uint64_t seed,
                                                 bool matched);

}  // namespace kerropt
