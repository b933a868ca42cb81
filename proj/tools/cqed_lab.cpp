#include "cqed/analytic.hpp"
#include "cqed/certify.hpp"
#include "cqed/config.hpp"
#include "cqed/error.hpp"
#include "cqed/export.hpp"
#include "cqed/extrema.hpp"
#include "cqed/sweep.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct SweepOverrides {
    std::optional<std::string> var;
    std::optional<double> from;
    std::optional<double> to;
    std::optional<int> points;
};

struct Common {
    std::string config;
    std::optional<int> cutoff;
    std::optional<int> workers;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "configuration file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--cutoff", c.cutoff, "photon number cutoff (overrides [numerics] photon_cutoff)")
        ->check(CLI::Range(2, 60));
    cmd->add_option("--workers", c.workers, "worker threads, 0 = hardware concurrency")
        ->check(CLI::NonNegativeNumber);
}

void add_sweep_options(CLI::App* cmd, SweepOverrides& s) {
    cmd->add_option("--var", s.var, "swept variable")->check(CLI::IsMember({"delta", "kappa", "n_th"}));
    cmd->add_option("--from", s.from, "first grid value");
    cmd->add_option("--to", s.to, "last grid value");
    cmd->add_option("--points", s.points, "number of grid points")->check(CLI::PositiveNumber);
}

cqed::LabConfig load(const Common& c) {
    cqed::LabConfig cfg = cqed::load_config(c.config);
    if (c.cutoff) {
        cfg.model.photon_cutoff = *c.cutoff;
    }
    if (c.workers) {
        cfg.numerics.workers = *c.workers;
    }
    return cfg;
}

void apply(const SweepOverrides& s, cqed::LabConfig& cfg) {
    cqed::SweepSpec& spec = cfg.sweep;
    if (s.var) {
        const auto v = cqed::parse_sweep_variable(*s.var);
        if (v != spec.variable) {
            spec = cqed::SweepSpec{};
            spec.variable = v;
            if (v == cqed::SweepVariable::Delta) {
                spec.from = -2.5 * cfg.model.g;
                spec.to = 2.5 * cfg.model.g;
            } else if (!s.from || !s.to) {
                throw cqed::ArgumentError(fmt::format("--var {} needs --from and --to", *s.var));
            }
        }
    }
    if (s.from || s.to || s.points) {
        spec.values.clear();
    }
    if (s.from) {
        spec.from = *s.from;
    }
    if (s.to) {
        spec.to = *s.to;
    }
    if (s.points) {
        spec.points = *s.points;
    }
}

std::string show(const std::optional<double>& v) { return v ? fmt::format("{:.10g}", *v) : "undefined"; }

int run_point(const cqed::LabConfig& cfg, std::optional<double> delta) {
    cqed::ModelParams p = cfg.model;
    if (delta) {
        p.set_detuning(*delta);
    }
    const cqed::SweepRecord r = cqed::evaluate_point(p);
    fmt::print("delta = {:.10g}  (delta/g = {:.6g})\n", p.delta_c, p.g != 0 ? p.delta_c / p.g : 0.0);
    fmt::print("{:<12} {:>18} {:>18}\n", "", "numeric", "analytic");
    fmt::print("{:<12} {:>18} {:>18}\n", "n_ph", show(r.n_ph_numeric), show(r.n_ph_analytic));
    fmt::print("{:<12} {:>18} {:>18}\n", "g2(0)", show(r.g2_numeric), show(r.g2_analytic));
    fmt::print("{:<12} {:>18} {:>18}\n", "concurrence", show(r.conc_numeric), show(r.conc_analytic));
    if (!r.solver_clean()) {
        fmt::print(stderr, "solver: {}\n", r.error);
        return 1;
    }
    fmt::print("residual {:.3g}, trace error {:.3g}, min eigenvalue {:.3g}\n", r.residual, r.trace_error,
               r.min_eigenvalue);
    if (p.delta_c == p.delta_a && p.epsilon > 0.1 * std::min({p.kappa, p.gamma, p.g})) {
        fmt::print("note: epsilon = {:.4g} is outside the weak-drive regime of the analytic engine\n",
                   p.epsilon);
    }
    return 0;
}

int run_extrema(const cqed::LabConfig& cfg) {
    if (cfg.sweep.variable != cqed::SweepVariable::Delta) {
        throw cqed::ArgumentError("extrema needs a detuning sweep (--var delta)");
    }
    const auto records = cqed::run_sweep(cfg);
    const double g = cfg.model.g;
    for (auto series : {cqed::Series::G2Numeric, cqed::Series::G2Analytic, cqed::Series::ConcNumeric,
                        cqed::Series::ConcAnalytic}) {
        fmt::print("{}\n", cqed::to_string(series));
        for (const auto& e : cqed::find_extrema(records, series)) {
            fmt::print("  {:<16} delta = {:>12.6f} ({:+.5f} g)  value = {:<12.6g} ideal = {:+.5f} g  "
                       "offset = {:.2e}\n",
                       cqed::to_string(e.kind), e.location, g != 0 ? e.location / g : e.location, e.value,
                       g != 0 ? e.ideal_location / g : e.ideal_location, e.relative_offset);
        }
    }
    return 0;
}

int run_verify(const cqed::LabConfig& cfg, const std::string& report_path) {
    const cqed::CertificationReport report = cqed::verify(cfg);
    for (const auto& c : report.checks) {
        fmt::print("{:<8} {:<36} {}\n", cqed::to_string(c.status), c.name, c.detail);
    }
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out || !(out << report.to_json() << '\n')) {
            throw cqed::IoError(fmt::format("cannot write report to {}", report_path));
        }
    }
    fmt::print("{}\n", report.all_passed() ? "all checks passed" : "certification failed");
    return report.exit_status();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state photon statistics and two-atom entanglement of a driven cavity"};
    app.require_subcommand(1);

    Common common;
    SweepOverrides overrides;
    std::string out_path;
    std::string format;
    std::string report_path;
    std::optional<double> delta;

    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep with both engines and export it");
    add_common(sweep, common);
    add_sweep_options(sweep, overrides);
    sweep->add_option("--out", out_path, "output file (stdout when omitted)");
    sweep->add_option("--format", format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}));

    auto* extrema = app.add_subcommand("extrema", "locate and classify extrema of a detuning sweep");
    add_common(extrema, common);
    add_sweep_options(extrema, overrides);

    auto* verify = app.add_subcommand("verify", "certify the extremum correspondence for a configuration");
    add_common(verify, common);
    verify->add_option("--report", report_path, "JSON report path");

    auto* point = app.add_subcommand("point", "evaluate a single parameter point");
    add_common(point, common);
    point->add_option("--delta", delta, "detuning (both cavity and atoms)");

    CLI11_PARSE(app, argc, argv);

    try {
        cqed::LabConfig cfg = load(common);
        if (*point) {
            return run_point(cfg, delta);
        }
        apply(overrides, cfg);
        if (*extrema) {
            return run_extrema(cfg);
        }
        if (*verify) {
            return run_verify(cfg, report_path);
        }

        const auto records = cqed::run_sweep(cfg);
        const auto fmt_kind = cqed::parse_export_format(format.empty() ? "csv" : format);
        if (out_path.empty()) {
            switch (fmt_kind) {
                case cqed::ExportFormat::Csv:
                    cqed::write_csv(records, std::cout);
                    break;
                case cqed::ExportFormat::Json:
                    cqed::write_json(records, std::cout);
                    break;
                case cqed::ExportFormat::Svg:
                    cqed::write_svg(records, std::cout);
                    break;
            }
        } else {
            cqed::export_records(records, fmt_kind, out_path);
            std::size_t failed = 0;
            for (const auto& r : records) {
                failed += r.solver_clean() ? 0 : 1;
            }
            fmt::print(stderr, "{} records written to {} ({} solver failures)\n", records.size(), out_path,
                       failed);
        }
        return 0;
    } catch (const cqed::Error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 2;
    }
}
