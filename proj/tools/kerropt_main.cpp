#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kerropt/errors.hpp"
#include "kerropt/pipeline.hpp"
#include "kerropt/selfcheck.hpp"

namespace {

using namespace kerropt;

constexpr int exit_ok = 0;
constexpr int exit_config = 1;     // I/O or configuration error
constexpr int exit_internal = 2;   // internal invariant violation

ParamGrid load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file \"" + path + "\"");
    return parse_config(in);
}

nlohmann::ordered_json record_json(const SweepRecord& rec) {
    nlohmann::ordered_json j;
    j["params"] = nlohmann::ordered_json::parse(serialize(rec.params));
    auto put = [&](const char* key, const std::optional<double>& v) {
        if (v) j[key] = *v; else j[key] = nullptr;
    };
    auto put_c = [&](const char* key, const std::optional<cplx>& v) {
        if (v) j[key] = {{"re", v->real()}, {"im", v->imag()}};
        else j[key] = nullptr;
    };
    put("y", rec.y);
    put_c("alpha", rec.alpha);
    put_c("beta", rec.beta);
    put("delta_d", rec.delta_d);
    put_c("g_d", rec.g_d);
    put("r", rec.r);
    put("phi", rec.phi);
    put("delta_sd", rec.delta_sd);
    put_c("g_sd", rec.g_sd);
    put("n_ss", rec.n_ss);
    put_c("m_ss", rec.m_ss);
    put("residual_r_abs", rec.residual_r_abs);
    j["region"] = to_string(rec.region);
    put("a1", rec.a1);
    put("a2", rec.a2);
    put("a3", rec.a3);
    put("a4", rec.a4);
    put("max_real_eig", rec.max_real_eig);
    put("e_n", rec.e_n);
    put("eta_minus", rec.eta_minus);
    put("mean_phonon", rec.mean_phonon);
    put("mean_photon", rec.mean_photon);
    j["status"] = to_string(rec.status);
    if (!rec.error_detail.empty()) j["error_detail"] = rec.error_detail;
    return j;
}

void print_point_text(const SweepRecord& rec) {
    const auto j = record_json(rec);
    for (const auto& [key, val] : j.items()) {
        if (key == "params") {
            std::cout << "params:\n";
            for (const auto& [pk, pv] : val.items())
                std::cout << "  " << pk << ": " << pv.dump() << "\n";
        } else {
            std::cout << key << ": " << val.dump() << "\n";
        }
    }
}

int cmd_point(const std::string& config_path, bool as_json) {
    const ParamGrid grid = load_config(config_path);
    const SweepRecord rec = evaluate_point(grid.single());
    if (as_json)
        std::cout << record_json(rec).dump(2) << "\n";
    else
        print_point_text(rec);
    return exit_ok;
}

void write_records(const std::string& out_path, const std::vector<SweepRecord>& records,
                   const std::vector<std::string>& columns) {
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot open output file \"" + out_path + "\"");
    write_csv(out, records, columns);
    out.flush();
    if (!out) throw ConfigError("failed writing \"" + out_path + "\"");
}

void print_summary(const SweepSummary& s) {
    std::cout << "points: " << s.total
              << "  ok: " << s.ok
              << "  multivalued: " << s.multivalued
              << "  squeeze_invalid: " << s.squeeze_invalid
              << "  unstable: " << s.unstable
              << "  error: " << s.error << "\n";
    if (s.ok > 0)
        std::cout << "e_n range: [" << s.e_n_min << ", " << s.e_n_max << "]\n";
    if (s.uncertainty_violations > 0)
        std::cout << "uncertainty violations: " << s.uncertainty_violations << "\n";
}

int cmd_sweep(const std::string& config_path, const std::string& out_path, unsigned workers) {
    const ParamGrid grid = load_config(config_path);
    if (grid.size() == 0) throw ConfigError("sweep grid is empty");
    const auto records = evaluate_grid(grid, resolve_workers(workers));
    write_records(out_path, records, {});
    const auto s = summarize(records);
    print_summary(s);
    return s.uncertainty_violations == 0 ? exit_ok : exit_internal;
}

int cmd_figure(const std::string& name, const std::string& out_path,
               std::size_t resolution, unsigned workers) {
    const FigureRecipe recipe = figure_recipe(name, resolution);
    const auto records = run_recipe(recipe, resolve_workers(workers));
    write_records(out_path, records, recipe.columns);
    const auto s = summarize(records);
    print_summary(s);
    return s.uncertainty_violations == 0 ? exit_ok : exit_internal;
}

int cmd_selftest() {
    std::vector<CheckResult> results;
    results.push_back(check_two_photon_cancellation(2000, 11));
    results.push_back(check_matched_reservoir_nulling(2000, 12));
    results.push_back(check_cardano_vs_companion(2000, 13));
    results.push_back(check_routh_vs_eigenvalues(2000, 14));
    results.push_back(check_tmsv_analytic());
    results.push_back(check_three_route_point());

    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
        std::cout << "\n";
        all = all && r.pass;
    }
    return all ? exit_ok : exit_internal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady states, stability maps, covariances and optomechanical "
                 "entanglement for a driven Kerr cavity coupled to a squeezed reservoir"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string figure_name;
    bool as_json = false;
    unsigned workers = 0;
    std::size_t resolution = 201;

    auto* point = app.add_subcommand("point", "Evaluate a single parameter point");
    point->add_option("--config", config_path, "Config file (JSON)")->required();
    point->add_flag("--json", as_json, "Emit JSON instead of text");

    auto* sweep = app.add_subcommand("sweep", "Evaluate a parameter grid to CSV");
    sweep->add_option("--config", config_path, "Config file (JSON)")->required();
    sweep->add_option("--out", out_path, "Output CSV path")->required();
    sweep->add_option("--workers", workers, "Worker threads (default: KERROPT_WORKERS or hardware)");

    auto* figure = app.add_subcommand("figure", "Run a named figure recipe to CSV");
    figure->add_option("name", figure_name, "fig2 fig3 fig4 fig5 fig6a fig6b fig7")->required();
    figure->add_option("--out", out_path, "Output CSV path")->required();
    figure->add_option("--resolution", resolution, "Points per swept axis (default 201)");
    figure->add_option("--workers", workers, "Worker threads");

    auto* selftest = app.add_subcommand("selftest", "Run the oracle cross-checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_config;
    }

    try {
        if (point->parsed()) return cmd_point(config_path, as_json);
        if (sweep->parsed()) return cmd_sweep(config_path, out_path, workers);
        if (figure->parsed()) return cmd_figure(figure_name, out_path, resolution, workers);
        if (selftest->parsed()) return cmd_selftest();
    } catch (const InvariantViolation& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return exit_internal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
    return exit_config;
}
