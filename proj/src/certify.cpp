#include "cqed/certify.hpp"

#include "cqed/error.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace cqed {

std::string_view to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::Pass:
            return "pass";
        case CheckStatus::Fail:
            return "fail";
        case CheckStatus::Skipped:
            return "skipped";
    }
    return "unknown";
}

bool CertificationReport::all_passed() const {
    bool ran = false;
    for (const auto& c : checks) {
        if (c.status == CheckStatus::Fail) {
            return false;
        }
        ran = ran || c.status == CheckStatus::Pass;
    }
    return ran;
}

int CertificationReport::exit_status() const { return all_passed() ? 0 : 1; }

std::string CertificationReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name},
                       {"status", std::string(to_string(c.status))},
                       {"measured", std::isfinite(c.measured) ? nlohmann::json(c.measured) : nlohmann::json(nullptr)},
                       {"tolerance", c.tolerance},
                       {"detail", c.detail}});
    }
    return nlohmann::json{{"passed", all_passed()}, {"checks", arr}}.dump(2);
}

namespace {

CheckResult skipped(std::string name, double tolerance, std::string why) {
    return {std::move(name), CheckStatus::Skipped, std::numeric_limits<double>::quiet_NaN(),
            tolerance, "skipped: " + std::move(why)};
}

bool any_defined(std::span<const SweepRecord> records, Series s) {
    return std::any_of(records.begin(), records.end(),
                       [s](const SweepRecord& r) { return series_value(r, s).has_value(); });
}

double relative_deviation(double reference, double other) {
    return std::abs(other - reference) / std::abs(reference);
}

// Best report of `kind` near `ideal`, if any.
const ExtremumReport* closest(const std::vector<ExtremumReport>& reports, ExtremumKind kind,
                              double ideal) {
    const ExtremumReport* best = nullptr;
    for (const auto& r : reports) {
        if (r.kind == kind && r.ideal_location == ideal &&
            (!best || r.relative_offset < best->relative_offset)) {
            best = &r;
        }
    }
    return best;
}

std::vector<ExtremumReport> extrema_or_empty(std::span<const SweepRecord> records, Series s,
                                             std::string& note) {
    try {
        return find_extrema(records, s);
    } catch (const InsufficientData& e) {
        note = e.what();
        return {};
    }
}

struct LocatedPair {
    bool ok = true;
    double worst_offset = 0.0;
    std::string detail;
    std::array<const ExtremumReport*, 2> found{nullptr, nullptr};
};

// Looks for one extremum of `kind` at +ideal and one at −ideal, each within
// kLocationTol and satisfying `value_ok`.
template <typename ValueOk>
LocatedPair locate_pair(const std::vector<ExtremumReport>& reports, ExtremumKind kind, double ideal,
                        double g, ValueOk value_ok) {
    LocatedPair out;
    int k = 0;
    for (double target : {ideal, -ideal}) {
        const ExtremumReport* r = closest(reports, kind, target);
        if (!r) {
            out.ok = false;
            out.worst_offset = std::numeric_limits<double>::infinity();
            out.detail += fmt::format("no {} near {:.4g}g; ", to_string(kind), target / g);
        } else {
            out.found[k] = r;
            out.worst_offset = std::max(out.worst_offset, r->relative_offset);
            const bool located = r->relative_offset < kLocationTol;
            const bool valued = value_ok(r->value);
            out.ok = out.ok && located && valued;
            out.detail += fmt::format("{} at {:.6g}g (offset {:.3g}, value {:.4g}{}); ",
                                      to_string(kind), r->location / g, r->relative_offset, r->value,
                                      valued ? "" : ", value out of range");
        }
        ++k;
    }
    return out;
}

CheckResult from_pair(std::string name, const LocatedPair& p) {
    return {std::move(name), p.ok ? CheckStatus::Pass : CheckStatus::Fail, p.worst_offset,
            kLocationTol, p.detail};
}

}  // namespace

CheckResult check_oracle_agreement(std::span<const SweepRecord> records, Series numeric,
                                   Series analytic, double tolerance) {
    std::string_view label = to_string(analytic);
    label = label.substr(0, label.rfind("_analytic"));
    const std::string name = fmt::format("oracle_agreement_{}", label);
    double worst = 0.0;
    double worst_at = 0.0;
    int compared = 0;
    int failing = 0;
    std::string failures;
    for (const auto& r : records) {
        const auto n = series_value(r, numeric);
        const auto a = series_value(r, analytic);
        if (!n || !a || !(*n > kOracleFloor)) {
            continue;
        }
        ++compared;
        const double dev = relative_deviation(*n, *a);
        if (dev > worst) {
            worst = dev;
            worst_at = r.delta;
        }
        if (!(dev < tolerance)) {
            ++failing;
            if (failing <= 6) {
                failures += fmt::format(" {:.4g}g:{:.3g}", r.g != 0 ? r.delta / r.g : r.delta, dev);
            }
        }
    }
    if (compared == 0) {
        return skipped(name, tolerance, "undefined (no point above the numeric floor)");
    }
    std::string detail = fmt::format("{} points compared, worst deviation {:.4g} at delta = {:.6g}",
                                     compared, worst, worst_at);
    if (failing > 0) {
        detail += fmt::format("; {} points exceed tolerance (delta/g:deviation):{}{}", failing,
                              failures, failing > 6 ? " ..." : "");
    }
    return {name, failing == 0 ? CheckStatus::Pass : CheckStatus::Fail, worst, tolerance, detail};
}

CheckResult check_antibunching_g2(std::span<const SweepRecord> records) {
    const std::string name = "antibunching_g2_minima";
    if (!any_defined(records, Series::G2Numeric)) {
        return skipped(name, kLocationTol, "undefined g2");
    }
    std::string note;
    const auto reports = extrema_or_empty(records, Series::G2Numeric, note);
    const double g = records.front().g;
    auto p = locate_pair(reports, ExtremumKind::AntibunchingMin, std::sqrt(2.0) * g, g,
                         [](double v) { return v < kAntibunchingG2Max; });
    p.detail += note;
    return from_pair(name, p);
}

CheckResult check_antibunching_concurrence(std::span<const SweepRecord> records) {
    std::string note;
    const auto reports = extrema_or_empty(records, Series::ConcNumeric, note);
    const double g = records.empty() ? 0.0 : records.front().g;
    auto p = locate_pair(reports, ExtremumKind::ConcurrenceMax, std::sqrt(2.0) * g, g,
                         [](double) { return true; });
    p.detail += note;
    return from_pair("antibunching_concurrence_maxima", p);
}

CheckResult check_bunching_g2(std::span<const SweepRecord> records) {
    const std::string name = "bunching_g2_maxima";
    if (!any_defined(records, Series::G2Numeric)) {
        return skipped(name, kLocationTol, "undefined g2");
    }
    std::string note;
    const auto reports = extrema_or_empty(records, Series::G2Numeric, note);
    const double g = records.front().g;
    auto p = locate_pair(reports, ExtremumKind::BunchingMax, std::sqrt(6.0) / 2.0 * g, g,
                         [](double v) { return v > 1.0; });
    p.detail += note;
    return from_pair(name, p);
}

CheckResult check_bunching_concurrence(std::span<const SweepRecord> records) {
    std::string note;
    const auto reports = extrema_or_empty(records, Series::ConcNumeric, note);
    const double g = records.empty() ? 0.0 : records.front().g;
    const auto anti = locate_pair(reports, ExtremumKind::ConcurrenceMax, std::sqrt(2.0) * g, g,
                                  [](double) { return true; });
    auto p = locate_pair(reports, ExtremumKind::ConcurrenceMax, std::sqrt(6.0) / 2.0 * g, g,
                         [](double) { return true; });
    for (int k = 0; k < 2; ++k) {
        const ExtremumReport* b = p.found[k];
        const ExtremumReport* a = anti.found[k];
        if (b && (!a || !(b->value < a->value))) {
            p.ok = false;
            p.detail += fmt::format("bunching-point concurrence {:.4g} not below antibunching-point "
                                    "value {}; ",
                                    b->value, a ? fmt::format("{:.4g}", a->value) : "(missing)");
        }
    }
    p.detail += note;
    return from_pair("bunching_concurrence_maxima", p);
}

CheckResult check_dark_state_g2(const ModelParams& params) {
    const std::string name = "dark_state_g2";
    ModelParams p = params;
    const SweepRecord r = evaluate_point(p.set_detuning(0.0));
    if (!r.solver_clean()) {
        return {name, CheckStatus::Fail, std::numeric_limits<double>::quiet_NaN(), kDarkStateG2Min, r.error};
    }
    if (!r.g2_numeric) {
        return skipped(name, kDarkStateG2Min, "undefined g2 at delta = 0");
    }
    const bool ok = *r.g2_numeric > kDarkStateG2Min;
    return {name, ok ? CheckStatus::Pass : CheckStatus::Fail, *r.g2_numeric, kDarkStateG2Min,
            fmt::format("g2(0) at delta = 0 is {:.4g}", *r.g2_numeric)};
}

CheckResult check_dark_state_concurrence(const ModelParams& params) {
    const std::string name = "dark_state_concurrence";
    ModelParams p0 = params;
    ModelParams p1 = params;
    const SweepRecord dark = evaluate_point(p0.set_detuning(0.0));
    const SweepRecord anti = evaluate_point(p1.set_detuning(std::sqrt(2.0) * params.g));
    if (!dark.solver_clean() || !anti.solver_clean()) {
        return {name, CheckStatus::Fail, std::numeric_limits<double>::quiet_NaN(),
                kDarkStateConcurrenceRatio, dark.error + anti.error};
    }
    const double c0 = *dark.conc_numeric;
    const double c1 = *anti.conc_numeric;
    const double ratio = c1 > 0.0 ? c0 / c1 : std::numeric_limits<double>::infinity();
    const bool ok = ratio < kDarkStateConcurrenceRatio;
    return {name, ok ? CheckStatus::Pass : CheckStatus::Fail, ratio, kDarkStateConcurrenceRatio,
            fmt::format("C(0) = {:.4g}, C(sqrt2 g) = {:.4g}", c0, c1)};
}

CheckResult check_steady_state_contract(std::span<const SweepRecord> records) {
    double trace = 0.0;
    double herm = 0.0;
    double min_eig = std::numeric_limits<double>::infinity();
    double residual = 0.0;
    int failures = 0;
    std::string errors;
    for (const auto& r : records) {
        if (!r.solver_clean()) {
            ++failures;
            errors += r.error + "; ";
            continue;
        }
        trace = std::max(trace, r.trace_error);
        herm = std::max(herm, r.hermiticity_error);
        min_eig = std::min(min_eig, r.min_eigenvalue);
        residual = std::max(residual, r.residual);
    }
    const bool ok = failures == 0 && trace < kTraceTol && herm < kHermiticityTol &&
                    min_eig >= kMinEigenvalue && residual < kResidualTol;
    return {"steady_state_contract", ok ? CheckStatus::Pass : CheckStatus::Fail, residual,
            kResidualTol,
            fmt::format("{} states: max trace error {:.3g}, max Hermiticity error {:.3g}, min "
                        "eigenvalue {:.3g}, max residual {:.3g}, solver failures {}{}",
                        records.size(), trace, herm, min_eig, residual, failures,
                        errors.empty() ? "" : " (" + errors + ")")};
}

std::vector<CheckResult> correspondence_checks(const ModelParams& params,
                                               std::span<const SweepRecord> records) {
    return {
        check_oracle_agreement(records, Series::NphNumeric, Series::NphAnalytic, kOracleTolNph),
        check_oracle_agreement(records, Series::G2Numeric, Series::G2Analytic, kOracleTolG2),
        check_oracle_agreement(records, Series::ConcNumeric, Series::ConcAnalytic, kOracleTolConcurrence),
        check_antibunching_g2(records),
        check_antibunching_concurrence(records),
        check_bunching_g2(records),
        check_bunching_concurrence(records),
        check_dark_state_g2(params),
        check_dark_state_concurrence(params),
    };
}

CheckResult check_cutoff_convergence(const LabConfig& cfg, std::span<const SweepRecord> records,
                                     std::span<const CheckResult> reference) {
    LabConfig higher = cfg;
    higher.model.photon_cutoff += 1;
    const auto other = run_sweep(higher);
    const auto other_checks = correspondence_checks(higher.model, other);

    std::string detail;
    bool same_pattern = other_checks.size() == reference.size();
    for (std::size_t k = 0; same_pattern && k < reference.size(); ++k) {
        if (reference[k].status != other_checks[k].status) {
            same_pattern = false;
            detail += fmt::format("{} changes from {} to {}; ", reference[k].name,
                                  to_string(reference[k].status), to_string(other_checks[k].status));
        }
    }

    double worst = 0.0;
    std::string worst_what = "none";
    const std::size_t n = std::min(records.size(), other.size());
    for (std::size_t k = 0; k < n; ++k) {
        for (Series s : {Series::NphNumeric, Series::G2Numeric, Series::ConcNumeric}) {
            const auto a = series_value(records[k], s);
            const auto b = series_value(other[k], s);
            if (!a || !b || !(*a > kOracleFloor) || !(*b > kOracleFloor)) {
                continue;
            }
            const double change = std::abs(*a - *b) / std::max(std::abs(*a), std::abs(*b));
            if (change > worst) {
                worst = change;
                worst_what = fmt::format("{} at delta = {:.6g}", to_string(s), records[k].delta);
            }
        }
    }
    const bool ok = same_pattern && worst < kCutoffRelativeChange && records.size() == other.size();
    detail += fmt::format("cutoff {} -> {}: pass/fail pattern {}, largest relative change {:.3g} ({})",
                          cfg.model.photon_cutoff, higher.model.photon_cutoff,
                          same_pattern ? "identical" : "differs", worst, worst_what);
    return {"cutoff_convergence", ok ? CheckStatus::Pass : CheckStatus::Fail, worst,
            kCutoffRelativeChange, detail};
}

CertificationReport verify(const LabConfig& cfg) {
    LabConfig c = cfg;
    if (c.sweep.variable != SweepVariable::Delta) {
        c.sweep = SweepSpec{};
        c.sweep.from = -2.5 * c.model.g;
        c.sweep.to = 2.5 * c.model.g;
    }
    const auto records = run_sweep(c);

    CertificationReport report;
    report.checks = correspondence_checks(c.model, records);
    const auto reference = report.checks;
    report.checks.push_back(check_steady_state_contract(records));
    report.checks.push_back(check_cutoff_convergence(c, records, reference));
    return report;
}

}  // namespace cqed
