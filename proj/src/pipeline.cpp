#include "kerropt/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <ostream>
#include <thread>

#include "kerropt/errors.hpp"
#include "kerropt/moments.hpp"

namespace kerropt {

std::string to_string(PointStatus s) {
    switch (s) {
        case PointStatus::Ok: return "Ok";
        case PointStatus::Multivalued: return "Multivalued";
        case PointStatus::SqueezeInvalid: return "SqueezeInvalid";
        case PointStatus::Unstable: return "Unstable";
        case PointStatus::Error: return "Error";
    }
    return "?";
}

SweepRecord evaluate_point(const SystemParams& p) {
    SweepRecord rec;
    rec.params = p;
    try {
        validate(p);

        RootSet rs;
        try {
            rs = semiclassical_roots(p);
        } catch (const DegenerateCubic& e) {
            rec.status = PointStatus::Error;
            rec.error_detail = e.what();
            return rec;
        }
        if (!rs.single_valued()) {
            rec.region = StabilityRegion::Multivalued;
            rec.status = PointStatus::Multivalued;
            return rec;
        }

        const Amplitudes amp = steady_amplitudes(p, rs);
        rec.y = amp.y;
        rec.alpha = amp.alpha_ss;
        rec.beta = amp.beta_ss;

        const DisplacedFrame df = displaced_frame(p, amp);
        rec.delta_d = df.delta_d;
        rec.g_d = df.g_d;

        SqueezeFrame sf;
        try {
            sf = squeeze_frame(p, amp, df);
        } catch (const SqueezeDomainError&) {
            rec.region = StabilityRegion::SqueezeInvalid;
            rec.status = PointStatus::SqueezeInvalid;
            return rec;
        }
        rec.r = sf.r;
        rec.phi = sf.phi;
        rec.delta_sd = sf.delta_sd;
        rec.g_sd = sf.g_sd;
        rec.n_ss = sf.n_ss;
        rec.m_ss = sf.m_ss;
        rec.residual_r_abs = std::abs(sf.residual_r);

        const CharPoly cp = char_poly(sf.delta_sd, sf.g_sd, p.kappa_a, p.kappa_b);
        rec.a1 = cp.a1;
        rec.a2 = cp.a2;
        rec.a3 = cp.a3;
        rec.a4 = cp.a4;
        const DriftMatrix A = drift_matrix(sf.delta_sd, sf.g_sd, p.kappa_a, p.kappa_b);
        rec.max_real_eig = max_real_eigenvalue(A.a_mat);

        if (!routh_hurwitz(cp.a1, cp.a2, cp.a3, cp.a4)) {
            rec.region = StabilityRegion::SingleUnstable;
            rec.status = PointStatus::Unstable;
            return rec;
        }
        rec.region = StabilityRegion::SingleStable;

        const DiffusionMatrix D =
            diffusion_matrix(p.kappa_a, p.kappa_b, p.n_th, sf.n_ss, sf.m_ss);
        const CovarianceMatrix v = lyapunov_steady(A, D);
        rec.covariance = v;
        rec.uncertainty_pass = uncertainty_ok(v);
        if (!rec.uncertainty_pass) {
            rec.status = PointStatus::Error;
            rec.error_detail = "covariance failed the uncertainty audit";
            return rec;
        }

        const EntanglementRecord ent = log_negativity(v);
        rec.e_n = ent.e_n;
        rec.eta_minus = ent.eta_minus;
        rec.mean_phonon = ent.mean_phonon;
        rec.mean_photon = ent.mean_photon;
        rec.status = PointStatus::Ok;
    } catch (const std::exception& e) {
        rec.status = PointStatus::Error;
        rec.error_detail = e.what();
    }
    return rec;
}

namespace {

std::vector<SweepRecord> evaluate_points(const std::vector<SystemParams>& points,
                                         unsigned workers);

}  // namespace

std::vector<SweepRecord> evaluate_grid(const ParamGrid& grid, unsigned workers) {
    std::vector<SystemParams> points(grid.size());
    for (std::size_t i = 0; i < points.size(); ++i) points[i] = grid.at(i);
    return evaluate_points(points, workers);
}

SweepSummary summarize(const std::vector<SweepRecord>& records) {
    SweepSummary s;
    s.total = records.size();
    bool have_en = false;
    for (const auto& r : records) {
        switch (r.status) {
            case PointStatus::Ok: ++s.ok; break;
            case PointStatus::Multivalued: ++s.multivalued; break;
            case PointStatus::SqueezeInvalid: ++s.squeeze_invalid; break;
            case PointStatus::Unstable: ++s.unstable; break;
            case PointStatus::Error: ++s.error; break;
        }
        if (!r.uncertainty_pass) ++s.uncertainty_violations;
        if (r.e_n) {
            if (!have_en) {
                s.e_n_min = s.e_n_max = *r.e_n;
                have_en = true;
            } else {
                s.e_n_min = std::min(s.e_n_min, *r.e_n);
                s.e_n_max = std::max(s.e_n_max, *r.e_n);
            }
        }
    }
    return s;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const std::vector<std::string>& physics_columns() {
    static const std::vector<std::string> cols = {
        "y", "alpha_re", "alpha_im", "beta_re", "beta_im",
        "delta_d", "g_d_re", "g_d_im",
        "r", "phi", "delta_sd", "g_sd_re", "g_sd_im",
        "n_ss", "m_ss_re", "m_ss_im", "residual_r_abs",
        "a1", "a2", "a3", "a4", "max_real_eig",
        "e_n", "eta_minus", "mean_phonon", "mean_photon",
    };
    return cols;
}

std::string column_value(const SweepRecord& r, const std::string& col) {
    auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
    auto opt_re = [](const std::optional<cplx>& v) { return v ? fmt(v->real()) : std::string(); };
    auto opt_im = [](const std::optional<cplx>& v) { return v ? fmt(v->imag()) : std::string(); };

    if (col == "y") return opt(r.y);
    if (col == "alpha_re") return opt_re(r.alpha);
    if (col == "alpha_im") return opt_im(r.alpha);
    if (col == "beta_re") return opt_re(r.beta);
    if (col == "beta_im") return opt_im(r.beta);
    if (col == "delta_d") return opt(r.delta_d);
    if (col == "g_d_re") return opt_re(r.g_d);
    if (col == "g_d_im") return opt_im(r.g_d);
    if (col == "r") return opt(r.r);
    if (col == "phi") return opt(r.phi);
    if (col == "delta_sd") return opt(r.delta_sd);
    if (col == "g_sd_re") return opt_re(r.g_sd);
    if (col == "g_sd_im") return opt_im(r.g_sd);
    if (col == "n_ss") return opt(r.n_ss);
    if (col == "m_ss_re") return opt_re(r.m_ss);
    if (col == "m_ss_im") return opt_im(r.m_ss);
    if (col == "residual_r_abs") return opt(r.residual_r_abs);
    if (col == "a1") return opt(r.a1);
    if (col == "a2") return opt(r.a2);
    if (col == "a3") return opt(r.a3);
    if (col == "a4") return opt(r.a4);
    if (col == "max_real_eig") return opt(r.max_real_eig);
    if (col == "e_n") return opt(r.e_n);
    if (col == "eta_minus") return opt(r.eta_minus);
    if (col == "mean_phonon") return opt(r.mean_phonon);
    if (col == "mean_photon") return opt(r.mean_photon);
    throw ConfigError("unknown CSV column \"" + col + "\"");
}

}  // namespace

std::vector<std::string> csv_header(const std::vector<std::string>& columns) {
    std::vector<std::string> hdr = {
        "delta_c", "g0", "chi", "omega_drive", "kappa_a", "kappa_b",
        "n_th", "r_e", "theta_e", "reservoir_mode",
    };
    const auto& phys = columns.empty() ? physics_columns() : columns;
    hdr.insert(hdr.end(), phys.begin(), phys.end());
    hdr.push_back("region");
    hdr.push_back("status");
    return hdr;
}

void write_csv(std::ostream& out, const std::vector<SweepRecord>& records,
               const std::vector<std::string>& columns) {
    const bool figure_style = !columns.empty();
    const auto& phys = columns.empty() ? physics_columns() : columns;

    const auto hdr = csv_header(columns);
    for (std::size_t i = 0; i < hdr.size(); ++i)
        out << (i ? "," : "") << hdr[i];
    out << "\n";

    for (const auto& r : records) {
        const auto& p = r.params;
        out << fmt(p.delta_c) << ',' << fmt(p.g0) << ',' << fmt(p.chi) << ','
            << fmt(p.omega_drive) << ',' << fmt(p.kappa_a) << ',' << fmt(p.kappa_b) << ','
            << fmt(p.n_th) << ',' << fmt(p.r_e) << ',' << fmt(p.theta_e) << ','
            << to_string(p.reservoir_mode);
        // Figure outputs blank every derived column on non-Ok rows (the
        // reported maps leave those regions empty); plain sweeps keep
        // whatever each completed stage produced.
        const bool blank_all = figure_style && r.status != PointStatus::Ok;
        for (const auto& col : phys)
            out << ',' << (blank_all ? std::string() : column_value(r, col));
        out << ',' << to_string(r.region) << ',' << to_string(r.status) << "\n";
    }
}

FigureRecipe figure_recipe(const std::string& name, std::size_t resolution) {
    if (resolution < 2) throw ConfigError("figure resolution must be >= 2");

    SystemParams base;
    base.g0 = 0.005;
    base.kappa_b = 1e-5;
    base.omega_drive = 50.0;
    base.n_th = 0.0;
    base.reservoir_mode = ReservoirMode::Matched;

    FigureRecipe rec;
    rec.name = name;

    if (name == "fig2" || name == "fig3" || name == "fig4" || name == "fig5") {
        base.delta_c = 0.0;
        rec.grid = ParamGrid(base, {SweepAxis{"delta_c", -2.0, 2.0, resolution},
                                    SweepAxis{"chi", 0.0, 1e-4, resolution}});
        if (name == "fig2") rec.columns = {"max_real_eig"};
        if (name == "fig3") rec.columns = {"delta_sd"};
        if (name == "fig4") rec.columns = {"g_sd_re", "g_sd_im"};
        if (name == "fig5") rec.columns = {"e_n", "eta_minus"};
    } else if (name == "fig6a") {
        base.kappa_a = 0.8;
        base.delta_c = 0.3;
        rec.grid = ParamGrid(base, {SweepAxis{"n_th", 0.0, 3000.0, resolution},
                                    SweepAxis{"chi", 0.0, 1e-4, resolution}});
        rec.columns = {"e_n", "eta_minus", "mean_phonon", "mean_photon"};
    } else if (name == "fig6b") {
        base.kappa_a = 0.8;
        base.delta_c = 0.3;
        rec.grid = ParamGrid(base, {SweepAxis{"omega_drive", 0.0, 100.0, resolution},
                                    SweepAxis{"chi", 0.0, 1e-4, resolution}});
        rec.columns = {"e_n", "eta_minus"};
    } else if (name == "fig7") {
        base.delta_c = 0.0;
        rec.grid = ParamGrid(base, {SweepAxis{"chi", 0.0, 1e-4, resolution}});
        rec.columns = {"r", "phi", "n_ss", "m_ss_re", "m_ss_im", "e_n", "eta_minus"};
        rec.reservoir_family = true;
    } else {
        throw ConfigError("unknown figure name \"" + name + "\" (fig2..fig5, fig6a, fig6b, fig7)");
    }
    return rec;
}

namespace {

// The four cavity decay rates the reported scans use.
constexpr std::array<double, 4> figure_kappas = {0.5, 0.8, 1.2, 1.5};

// fig7 reservoir scale factors: r_e = s_r * r, theta_e = s_t * phi + pi,
// with (r, phi) taken from the matched frame at the same point.
constexpr std::array<double, 3> fig7_r_scales = {0.0, 0.5, 1.0};
constexpr std::array<double, 3> fig7_theta_scales = {0.0, 0.5, 1.0};

}  // namespace

namespace {

std::vector<SweepRecord> evaluate_points(const std::vector<SystemParams>& points,
                                         unsigned workers) {
    std::vector<SweepRecord> records(points.size());
    if (workers == 0) workers = 1;
    workers = std::min<std::size_t>(workers, std::max<std::size_t>(points.size(), 1));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            records[i] = evaluate_point(points[i]);
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return records;
}

}  // namespace

std::vector<SweepRecord> run_recipe(const FigureRecipe& recipe, unsigned workers) {
    const bool vary_kappa = recipe.name != "fig6a" && recipe.name != "fig6b";

    // Flat point list, kappa_a slowest, then the fig7 reservoir family,
    // then the declared grid axes.
    const std::size_t per_kappa = recipe.grid.size();
    const std::size_t n_kappa = vary_kappa ? figure_kappas.size() : 1;

    std::vector<SystemParams> points;
    points.reserve(per_kappa * n_kappa *
                   (recipe.reservoir_family ? fig7_r_scales.size() * fig7_theta_scales.size() : 1));

    for (std::size_t ik = 0; ik < n_kappa; ++ik) {
        std::vector<SystemParams> slice(per_kappa);
        for (std::size_t i = 0; i < per_kappa; ++i) {
            slice[i] = recipe.grid.at(i);
            if (vary_kappa) slice[i].kappa_a = figure_kappas[ik];
        }
        if (!recipe.reservoir_family) {
            points.insert(points.end(), slice.begin(), slice.end());
            continue;
        }
        // fig7: resolve the matched frame once per point, then enumerate
        // the nine (r_e, theta_e) configurations derived from it.
        const std::vector<SweepRecord> matched = evaluate_points(slice, workers);
        for (double s_r : fig7_r_scales) {
            for (double s_t : fig7_theta_scales) {
                for (std::size_t i = 0; i < per_kappa; ++i) {
                    SystemParams p = slice[i];
                    if (matched[i].r && matched[i].phi) {
                        p.reservoir_mode = ReservoirMode::Explicit;
                        p.r_e = s_r * *matched[i].r;
                        p.theta_e = s_t * *matched[i].phi + std::numbers::pi;
                        if (p.r_e < 0.0) {
                            // (-r_e, theta) and (r_e, theta + pi) describe
                            // the same squeezed reservoir.
                            p.r_e = -p.r_e;
                            p.theta_e += std::numbers::pi;
                        }
                        if (p.r_e == 0.0) p.r_e = 0.0;  // normalize -0
                    }
                    // Points whose frame never resolved stay Matched; they
                    // report the same non-Ok status either way.
                    points.push_back(p);
                }
            }
        }
    }
    return evaluate_points(points, workers);
}

unsigned resolve_workers(unsigned flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("KERROPT_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

}  // namespace kerropt
