#include "kerropt/config.hpp"

#include <istream>
#include <sstream>

#include <json.hpp>

#include "kerropt/errors.hpp"

namespace kerropt {

using ordered_json = nlohmann::ordered_json;

double SweepAxis::value(std::size_t i) const {
    if (count == 1) return start;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

ParamGrid::ParamGrid(SystemParams base, std::vector<SweepAxis> axes)
    : base_(base), axes_(std::move(axes)) {}

std::size_t ParamGrid::size() const {
    std::size_t n = 1;
    for (const auto& ax : axes_) n *= ax.count;
    return n;
}

namespace {

double* field_ptr(SystemParams& p, const std::string& name) {
    if (name == "delta_c") return &p.delta_c;
    if (name == "g0") return &p.g0;
    if (name == "chi") return &p.chi;
    if (name == "omega_drive") return &p.omega_drive;
    if (name == "kappa_a") return &p.kappa_a;
    if (name == "kappa_b") return &p.kappa_b;
    if (name == "n_th") return &p.n_th;
    if (name == "r_e") return &p.r_e;
    if (name == "theta_e") return &p.theta_e;
    return nullptr;
}

}  // namespace

SystemParams ParamGrid::at(std::size_t index) const {
    SystemParams p = base_;
    // Row-major: the first declared axis varies slowest.
    std::size_t rem = index;
    for (std::size_t k = axes_.size(); k-- > 0;) {
        const auto& ax = axes_[k];
        std::size_t i = rem % ax.count;
        rem /= ax.count;
        *field_ptr(p, ax.field) = ax.value(i);
    }
    return p;
}

SystemParams ParamGrid::single() const {
    if (!is_single()) throw ConfigError("configuration declares a sweep grid, not a single point");
    return base_;
}

ParamGrid parse_config(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("malformed configuration document: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");

    SystemParams base;
    std::vector<SweepAxis> axes;

    for (const auto& [key, val] : j.items()) {
        if (key == "reservoir_mode") {
            if (!val.is_string()) throw ConfigError("reservoir_mode must be a string");
            base.reservoir_mode = reservoir_mode_from_string(val.get<std::string>());
            continue;
        }
        double* slot = field_ptr(base, key);
        if (!slot) throw ConfigError("unknown configuration key \"" + key + "\"");
        if (val.is_number()) {
            *slot = val.get<double>();
        } else if (val.is_object()) {
            for (const auto& [rk, rv] : val.items()) {
                if (rk != "start" && rk != "stop" && rk != "count")
                    throw ConfigError("range for \"" + key + "\" has unknown key \"" + rk + "\"");
                (void)rv;
            }
            if (!val.contains("start") || !val.contains("stop") || !val.contains("count"))
                throw ConfigError("range for \"" + key + "\" needs start, stop and count");
            SweepAxis ax;
            ax.field = key;
            ax.start = val.at("start").get<double>();
            ax.stop = val.at("stop").get<double>();
            if (!val.at("count").is_number_integer() || val.at("count").get<long long>() < 1)
                throw ConfigError("range for \"" + key + "\" has an empty or non-integer count");
            ax.count = val.at("count").get<std::size_t>();
            for (const auto& prev : axes)
                if (prev.field == key) throw ConfigError("duplicate range for \"" + key + "\"");
            axes.push_back(ax);
        } else {
            throw ConfigError("value for \"" + key + "\" must be a number or a range object");
        }
    }

    ParamGrid grid(base, axes);

    // Every per-field constraint is monotone-safe: validating both range
    // endpoints together with the base point covers the whole grid.
    validate(base);
    for (const auto& ax : grid.axes()) {
        SystemParams lo = base;
        SystemParams hi = base;
        *field_ptr(lo, ax.field) = ax.start;
        *field_ptr(hi, ax.field) = ax.stop;
        validate(lo);
        validate(hi);
    }
    return grid;
}

ParamGrid parse_config(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace kerropt
