#pragma once

#include <string>

namespace kerropt {

// Mechanical frequency is the unit of frequency throughout: omega_m == 1.
inline constexpr double omega_m = 1.0;

enum class ReservoirMode {
    // r_e and theta_e are derived from the computed squeeze frame,
    // (r_e, theta_e) = (r, phi + pi), nulling the effective bath.
    Matched,
    // r_e and theta_e are taken from the fields below as given.
    Explicit,
};

std::string to_string(ReservoirMode m);
ReservoirMode reservoir_mode_from_string(const std::string& s);

// Physical inputs, all rates and frequencies in units of omega_m.
struct SystemParams {
    double delta_c = 0.0;      // bare driving detuning
    double g0 = 0.0;           // single-photon optomechanical coupling
    double chi = 0.0;          // Kerr constant
    double omega_drive = 0.0;  // driving amplitude (real, >= 0)
    double kappa_a = 1.0;      // cavity decay rate
    double kappa_b = 1e-5;     // mechanical decay rate
    double n_th = 0.0;         // thermal phonon occupation of the mechanical bath
    double r_e = 0.0;          // reservoir squeezing amplitude
    double theta_e = 0.0;      // reservoir squeezing phase [rad]
    ReservoirMode reservoir_mode = ReservoirMode::Matched;
};

// Throws ConfigError when a field is out of range (nonpositive rates,
// negative couplings, non-finite values).
void validate(const SystemParams& p);

std::string serialize(const SystemParams& p);

}  // namespace kerropt
