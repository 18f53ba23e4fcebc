#include "kerropt/params.hpp"

#include <cmath>

#include <json.hpp>

#include "kerropt/errors.hpp"

namespace kerropt {

std::string to_string(ReservoirMode m) {
    return m == ReservoirMode::Matched ? "Matched" : "Explicit";
}

ReservoirMode reservoir_mode_from_string(const std::string& s) {
    if (s == "Matched") return ReservoirMode::Matched;
    if (s == "Explicit") return ReservoirMode::Explicit;
    throw ConfigError("reservoir_mode must be \"Matched\" or \"Explicit\", got \"" + s + "\"");
}

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

}  // namespace

void validate(const SystemParams& p) {
    auto finite = [](double v) { return std::isfinite(v); };
    require(finite(p.delta_c), "delta_c must be finite");
    require(finite(p.g0) && p.g0 >= 0.0, "g0 must be finite and >= 0");
    require(finite(p.chi) && p.chi >= 0.0, "chi must be finite and >= 0");
    require(finite(p.omega_drive) && p.omega_drive >= 0.0, "omega_drive must be finite and >= 0");
    require(finite(p.kappa_a) && p.kappa_a > 0.0, "kappa_a must be finite and > 0");
    require(finite(p.kappa_b) && p.kappa_b > 0.0, "kappa_b must be finite and > 0");
    require(finite(p.n_th) && p.n_th >= 0.0, "n_th must be finite and >= 0");
    require(finite(p.r_e) && p.r_e >= 0.0, "r_e must be finite and >= 0");
    require(finite(p.theta_e), "theta_e must be finite");
}

std::string serialize(const SystemParams& p) {
    nlohmann::ordered_json j;
    j["delta_c"] = p.delta_c;
    j["g0"] = p.g0;
    j["chi"] = p.chi;
    j["omega_drive"] = p.omega_drive;
    j["kappa_a"] = p.kappa_a;
    j["kappa_b"] = p.kappa_b;
    j["n_th"] = p.n_th;
    j["r_e"] = p.r_e;
    j["theta_e"] = p.theta_e;
    j["reservoir_mode"] = to_string(p.reservoir_mode);
    return j.dump(2);
}

}  // namespace kerropt
