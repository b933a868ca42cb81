#include "cqed/sweep.hpp"

#include "cqed/analytic.hpp"
#include "cqed/error.hpp"
#include "cqed/liouvillian.hpp"
#include "cqed/observables.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace cqed {

double swept_value(const SweepRecord& r, SweepVariable variable) {
    switch (variable) {
        case SweepVariable::Delta:
            return r.delta;
        case SweepVariable::Kappa:
            return r.kappa;
        case SweepVariable::NTh:
            return r.n_th;
    }
    return r.delta;
}

ModelParams with_swept_value(ModelParams base, const SweepSpec& spec, double value) {
    switch (spec.variable) {
        case SweepVariable::Delta:
            base.set_detuning(value);
            break;
        case SweepVariable::Kappa:
            base.kappa = value;
            if (spec.tie_gamma_to_kappa) {
                base.gamma = value;
            }
            break;
        case SweepVariable::NTh:
            base.n_th = value;
            break;
    }
    return base;
}

SweepRecord evaluate_point(const ModelParams& params) {
    SweepRecord r;
    r.delta = params.delta_c;
    r.kappa = params.kappa;
    r.gamma = params.gamma;
    r.epsilon = params.epsilon;
    r.g = params.g;
    r.n_th = params.n_th;
    r.gamma_d = params.gamma_d;

    try {
        const SteadyState ss = solve_steady_state(params);
        const ObservableSet obs = evaluate_observables(ss.rho);
        r.n_ph_numeric = obs.n_ph;
        r.g2_numeric = obs.g2_zero;
        r.conc_numeric = obs.concurrence;
        r.residual = ss.residual;
        r.condition_estimate = ss.condition_estimate;
        const auto& d = ss.rho.diagnostics();
        r.trace_error = d.trace_error;
        r.hermiticity_error = d.hermiticity_error;
        r.min_eigenvalue = d.min_eigenvalue;
    } catch (const Error& e) {
        r.error = e.what();
    }

    try {
        const auto amps = analytic::steady_amplitudes(params).amplitudes;
        r.n_ph_analytic = analytic::nph_from(amps);
        r.conc_analytic = analytic::concurrence_from(amps);
        if (*r.n_ph_analytic >= kG2PhotonFloor) {
            r.g2_analytic = analytic::g2_from(amps);
        }
    } catch (const UnsupportedRegime&) {
    } catch (const SingularParameters&) {
    }
    return r;
}

std::vector<SweepRecord> run_sweep(const ModelParams& base, const SweepSpec& spec, int workers) {
    const std::vector<double> grid = spec.grid();
    base.validate();
    for (double v : grid) {
        with_swept_value(base, spec, v).validate();
    }

    std::vector<SweepRecord> out(grid.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < grid.size(); k = next++) {
            out[k] = evaluate_point(with_swept_value(base, spec, grid[k]));
        }
    };

    unsigned pool = workers > 0 ? static_cast<unsigned>(workers) : std::thread::hardware_concurrency();
    pool = std::clamp<unsigned>(pool, 1u, static_cast<unsigned>(std::max<std::size_t>(grid.size(), 1)));
    {
        std::vector<std::jthread> threads;
        threads.reserve(pool);
        for (unsigned t = 0; t < pool; ++t) {
            threads.emplace_back(work);
        }
    }

    std::stable_sort(out.begin(), out.end(), [&](const SweepRecord& a, const SweepRecord& b) {
        return swept_value(a, spec.variable) < swept_value(b, spec.variable);
    });
    return out;
}

}  // namespace cqed
