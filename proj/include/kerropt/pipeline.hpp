#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kerropt/config.hpp"
#include "kerropt/dynamics.hpp"
#include "kerropt/entanglement.hpp"
#include "kerropt/frames.hpp"
#include "kerropt/steady_state.hpp"

namespace kerropt {

enum class PointStatus {
    Ok,
    Multivalued,
    SqueezeInvalid,
    Unstable,
    Error,
};

std::string to_string(PointStatus s);

// One evaluated grid point, flattened to a CSV row. Fields a stage did
// not reach are empty optionals and are emitted as empty cells.
struct SweepRecord {
    SystemParams params;

    std::optional<double> y;
    std::optional<cplx> alpha;
    std::optional<cplx> beta;

    std::optional<double> delta_d;
    std::optional<cplx> g_d;

    std::optional<double> r;
    std::optional<double> phi;
    std::optional<double> delta_sd;
    std::optional<cplx> g_sd;
    std::optional<double> n_ss;
    std::optional<cplx> m_ss;
    std::optional<double> residual_r_abs;

    StabilityRegion region = StabilityRegion::SqueezeInvalid;
    std::optional<double> a1, a2, a3, a4;
    std::optional<double> max_real_eig;

    std::optional<double> e_n;
    std::optional<double> eta_minus;
    std::optional<double> mean_phonon;
    std::optional<double> mean_photon;

    PointStatus status = PointStatus::Error;
    std::string error_detail;  // non-empty only for status Error

    // Filled for Ok points; used by the uncertainty audit, not emitted.
    std::optional<CovarianceMatrix> covariance;
    bool uncertainty_pass = true;
};

// Runs steadystate -> frames -> dynamics -> entanglement. Never throws;
// failures land in `status`.
SweepRecord evaluate_point(const SystemParams& p);

struct SweepSummary {
    std::size_t total = 0;
    std::size_t ok = 0;
    std::size_t multivalued = 0;
    std::size_t squeeze_invalid = 0;
    std::size_t unstable = 0;
    std::size_t error = 0;
    double e_n_min = 0.0;
    double e_n_max = 0.0;
    std::size_t uncertainty_violations = 0;
};

// Evaluates every grid point with a bounded worker pool. Row order is
// row-major over the declared ranges regardless of worker count.
std::vector<SweepRecord> evaluate_grid(const ParamGrid& grid, unsigned workers);

SweepSummary summarize(const std::vector<SweepRecord>& records);

// CSV emission. "full" schema keeps every field a completed stage
// produced (entanglement fields only for Ok rows). When `columns` is
// non-empty only those physics columns are written, and all derived
// columns are blanked on non-Ok rows (figure-style output).
void write_csv(std::ostream& out, const std::vector<SweepRecord>& records,
               const std::vector<std::string>& columns = {});

std::vector<std::string> csv_header(const std::vector<std::string>& columns = {});

// Named figure recipes reproducing the reported parameter scans.
struct FigureRecipe {
    std::string name;
    ParamGrid grid;
    std::vector<std::string> columns;
    // fig7 evaluates each point against nine explicit reservoir
    // configurations derived from the matched frame; flagged here.
    bool reservoir_family = false;
};

// Known names: fig2 fig3 fig4 fig5 fig6a fig6b fig7. Throws ConfigError
// for unknown names or resolution < 2.
FigureRecipe figure_recipe(const std::string& name, std::size_t resolution = 201);

// Evaluates a recipe (including the fig7 reservoir family expansion).
std::vector<SweepRecord> run_recipe(const FigureRecipe& recipe, unsigned workers);

// Worker-count resolution: explicit flag > KERROPT_WORKERS env > hardware.
unsigned resolve_workers(unsigned flag_value);

}  // namespace kerropt
