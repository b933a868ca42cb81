#pragma once

#include "cqed/config.hpp"
#include "cqed/extrema.hpp"
#include "cqed/sweep.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cqed {

enum class CheckStatus { Pass, Fail, Skipped };

std::string_view to_string(CheckStatus status);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Fail;
    double measured = 0.0;   ///< headline measured value (meaning depends on the check)
    double tolerance = 0.0;  ///< threshold the measured value was compared with
    std::string detail;
};

struct CertificationReport {
    std::vector<CheckResult> checks;

    /// True when at least one check ran and every non-skipped check passed.
    bool all_passed() const;
    /// Process exit status: 0 iff all_passed().
    int exit_status() const;
    std::string to_json() const;
};

// Thresholds pinned for the correspondence claims.
inline constexpr double kOracleTolG2 = 0.05;
inline constexpr double kOracleTolConcurrence = 0.05;
inline constexpr double kOracleTolNph = 0.02;
inline constexpr double kOracleFloor = 1e-10;
inline constexpr double kLocationTol = 0.01;  ///< |Δ − Δ_ideal| / g
inline constexpr double kAntibunchingG2Max = 0.1;
inline constexpr double kDarkStateG2Min = 100.0;
inline constexpr double kDarkStateConcurrenceRatio = 0.01;
inline constexpr double kCutoffRelativeChange = 1e-6;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kMinEigenvalue = -1e-8;
inline constexpr double kResidualTol = 1e-9;

/// Analytic-vs-numeric relative deviation of one observable over a sweep,
/// evaluated where the numeric value exceeds kOracleFloor.
CheckResult check_oracle_agreement(std::span<const SweepRecord> records, Series numeric,
                                   Series analytic, double tolerance);

/// g²(0) minima at ±√2g with g²(0) < 0.1.
CheckResult check_antibunching_g2(std::span<const SweepRecord> records);
/// Concurrence maxima at ±√2g.
CheckResult check_antibunching_concurrence(std::span<const SweepRecord> records);
/// g²(0) maxima at ±(√6/2)g with g²(0) > 1.
CheckResult check_bunching_g2(std::span<const SweepRecord> records);
/// Concurrence maxima at ±(√6/2)g, each below the antibunching-point maxima.
CheckResult check_bunching_concurrence(std::span<const SweepRecord> records);

/// At Δ = 0: g²(0) > 100.
CheckResult check_dark_state_g2(const ModelParams& params);
/// At Δ = 0: concurrence below 1% of its value at Δ = √2g.
CheckResult check_dark_state_concurrence(const ModelParams& params);

/// Trace, Hermiticity, positivity and residual of every solved point.
CheckResult check_steady_state_contract(std::span<const SweepRecord> records);

/// The detuning-sweep checks above, in a fixed order.
std::vector<CheckResult> correspondence_checks(const ModelParams& params,
                                               std::span<const SweepRecord> records);

/// Re-runs the detuning sweep one photon above the configured cutoff and
/// compares both the pass/fail pattern of `reference` and every numeric
/// observable above the oracle floor (relative change < 1e-6).
CheckResult check_cutoff_convergence(const LabConfig& cfg, std::span<const SweepRecord> records,
                                     std::span<const CheckResult> reference);

/// Full certification of a configuration: detuning sweep from the config's
/// [sweep] section (forced to var = delta), all correspondence checks, the
/// steady-state contract and cutoff convergence.
CertificationReport verify(const LabConfig& cfg);

}  // namespace cqed
