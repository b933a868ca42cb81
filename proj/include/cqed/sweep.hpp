#pragma once

#include "cqed/config.hpp"
#include "cqed/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cqed {

/// One grid point with both engines side by side. Observables that could not
/// be computed (solver failure, g²(0) below the photon floor, analytic engine
/// off resonance) are empty.
struct SweepRecord {
    double delta = 0.0;
    std::optional<double> n_ph_numeric;
    std::optional<double> n_ph_analytic;
    std::optional<double> g2_numeric;
    std::optional<double> g2_analytic;
    std::optional<double> conc_numeric;
    std::optional<double> conc_analytic;

    double kappa = 0.0;
    double gamma = 0.0;
    double epsilon = 0.0;
    double g = 0.0;
    double n_th = 0.0;
    double gamma_d = 0.0;

    // Steady-state diagnostics of the numeric solve.
    double residual = 0.0;
    double trace_error = 0.0;
    double hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;
    double condition_estimate = 0.0;

    /// Solver error for this point, empty when the solve succeeded.
    std::string error;

    bool solver_clean() const { return error.empty(); }
};

/// Value of the swept parameter carried by a record.
double swept_value(const SweepRecord& r, SweepVariable variable);

/// Copy of `base` with the swept parameter set to `value`.
ModelParams with_swept_value(ModelParams base, const SweepSpec& spec, double value);

/// Runs both engines at one parameter point. Solver failures are recorded in
/// the record instead of being thrown.
SweepRecord evaluate_point(const ModelParams& params);

/// Evaluates every grid point of `spec` on a pool of `workers` threads
/// (0 = hardware concurrency). The result is sorted by the swept value and
/// does not depend on the pool size.
std::vector<SweepRecord> run_sweep(const ModelParams& base, const SweepSpec& spec, int workers = 0);

inline std::vector<SweepRecord> run_sweep(const LabConfig& cfg) {
    return run_sweep(cfg.model, cfg.sweep, cfg.numerics.workers);
}

}  // namespace cqed
