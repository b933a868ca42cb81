#pragma once

#include "cqed/model.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cqed {

enum class SweepVariable { Delta, Kappa, NTh };

std::string_view to_string(SweepVariable v);
/// Accepts "delta", "kappa", "n_th"; throws ConfigError otherwise.
SweepVariable parse_sweep_variable(std::string_view name);

/// Grid description for a one-parameter sweep.
struct SweepSpec {
    SweepVariable variable = SweepVariable::Delta;
    double from = 0.0;
    double to = 0.0;
    int points = 401;
    bool log_spaced = false;
    /// For kappa sweeps: keep γ = κ at every point.
    bool tie_gamma_to_kappa = false;
    /// Explicit grid; when non-empty it replaces from/to/points.
    std::vector<double> values;

    /// Throws ConfigError for empty or non-finite ranges.
    std::vector<double> grid() const;
};

struct Numerics {
    double matrix_tolerance = 1e-12;
    double positivity_tolerance = 1e-8;
    /// Relative cutoff-change above which an observable is flagged unconverged.
    double convergence_threshold = 1e-3;
    int workers = 0;  ///< 0 = hardware concurrency
};

/// Everything a configuration file can describe.
struct LabConfig {
    ModelParams model;
    Numerics numerics;
    SweepSpec sweep;
    /// N̄_th values for thermal-degradation runs ([thermal] ladder).
    std::vector<double> n_th_ladder;
};

/// Reads an INI-style file with sections [model], [numerics], [sweep] and
/// [thermal]. Missing keys keep their defaults; a delta sweep without an
/// explicit range spans ±2.5 g.
LabConfig load_config(const std::filesystem::path& path);
LabConfig parse_config(std::string_view text);

}  // namespace cqed
