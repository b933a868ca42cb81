#include "cqed/config.hpp"
#include "cqed/error.hpp"
#include "cqed/export.hpp"
#include "cqed/sweep.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

using namespace cqed;

namespace {

ModelParams small_fig2() {
    ModelParams p;
    p.g = 40.0;
    p.epsilon = 0.125;
    p.photon_cutoff = 3;
    return p;
}

SweepSpec detuning(double from, double to, int points) {
    SweepSpec s;
    s.from = from;
    s.to = to;
    s.points = points;
    return s;
}

std::string csv(const std::vector<SweepRecord>& records) {
    std::ostringstream out;
    write_csv(records, out);
    return out.str();
}

}  // namespace

TEST_CASE("detuning sweep records carry both engines and the parameter context") {
    const auto records = run_sweep(small_fig2(), detuning(-100.0, 100.0, 21), 2);
    REQUIRE(records.size() == 21);
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto& r = records[k];
        CHECK(r.delta == doctest::Approx(-100.0 + 10.0 * k));
        CHECK(r.solver_clean());
        CHECK(r.n_ph_numeric.has_value());
        CHECK(r.n_ph_analytic.has_value());
        CHECK(r.g2_numeric.has_value());
        CHECK(r.g2_analytic.has_value());
        CHECK(r.conc_numeric.has_value());
        CHECK(r.conc_analytic.has_value());
        CHECK(r.kappa == 1.0);
        CHECK(r.gamma == 1.0);
        CHECK(r.epsilon == 0.125);
        CHECK(r.g == 40.0);
        CHECK(r.n_th == 0.0);
        CHECK(r.gamma_d == 0.0);
        CHECK(r.trace_error < 1e-10);
        CHECK(r.residual < 1e-9);
    }
}

TEST_CASE("undriven point") {
    ModelParams p = small_fig2();
    p.epsilon = 0.0;
    const auto records = run_sweep(p, detuning(3.0, 3.0, 1), 1);
    REQUIRE(records.size() == 1);
    const auto& r = records.front();
    CHECK(*r.n_ph_numeric == 0.0);
    CHECK(*r.conc_numeric == 0.0);
    CHECK_FALSE(r.g2_numeric.has_value());
    CHECK(*r.n_ph_analytic == 0.0);
    CHECK_FALSE(r.g2_analytic.has_value());
}

TEST_CASE("analytic fields are unavailable off resonance") {
    ModelParams p = small_fig2();
    p.delta_a = 1.0;
    SweepSpec s;
    s.variable = SweepVariable::Kappa;
    s.from = 1.0;
    s.to = 2.0;
    s.points = 2;
    s.tie_gamma_to_kappa = true;
    const auto records = run_sweep(p, s, 1);
    REQUIRE(records.size() == 2);
    for (const auto& r : records) {
        CHECK(r.n_ph_numeric.has_value());
        CHECK_FALSE(r.n_ph_analytic.has_value());
        CHECK_FALSE(r.g2_analytic.has_value());
        CHECK_FALSE(r.conc_analytic.has_value());
        CHECK(r.gamma == r.kappa);
    }
    CHECK(records[1].kappa == 2.0);
}

TEST_CASE("thermal sweep on explicit values") {
    SweepSpec s;
    s.variable = SweepVariable::NTh;
    s.values = {0.01, 0.0, 1e-3};
    const auto records = run_sweep(small_fig2(), s, 2);
    REQUIRE(records.size() == 3);
    CHECK(records[0].n_th == 0.0);
    CHECK(records[1].n_th == 1e-3);
    CHECK(records[2].n_th == 0.01);
    CHECK(swept_value(records[2], SweepVariable::NTh) == 0.01);
}

TEST_CASE("invalid sweeps") {
    CHECK_THROWS_AS(run_sweep(small_fig2(), detuning(1.0, 1.0, 5)), ConfigError);
    CHECK_THROWS_AS(run_sweep(small_fig2(), detuning(0.0, INFINITY, 5)), ConfigError);
    SweepSpec s;
    s.variable = SweepVariable::Kappa;
    s.from = -1.0;
    s.to = 1.0;
    s.points = 3;
    CHECK_THROWS_AS(run_sweep(small_fig2(), s), ArgumentError);
}

TEST_CASE("evaluation order and pool size do not change the output") {
    const SweepSpec grid = detuning(-90.0, 90.0, 13);
    const std::string reference = csv(run_sweep(small_fig2(), grid, 1));
    CHECK(csv(run_sweep(small_fig2(), grid, 1)) == reference);

    SweepSpec shuffled;
    shuffled.values = grid.grid();
    std::mt19937 rng(5);
    for (int workers : {2, 3, 7}) {
        std::shuffle(shuffled.values.begin(), shuffled.values.end(), rng);
        CHECK(csv(run_sweep(small_fig2(), shuffled, workers)) == reference);
    }
}

TEST_CASE("with_swept_value") {
    SweepSpec s;
    ModelParams p = with_swept_value(small_fig2(), s, 7.0);
    CHECK(p.delta_c == 7.0);
    CHECK(p.delta_a == 7.0);
    s.variable = SweepVariable::Kappa;
    p = with_swept_value(small_fig2(), s, 3.0);
    CHECK(p.kappa == 3.0);
    CHECK(p.gamma == 1.0);
    s.tie_gamma_to_kappa = true;
    CHECK(with_swept_value(small_fig2(), s, 3.0).gamma == 3.0);
    s.variable = SweepVariable::NTh;
    CHECK(with_swept_value(small_fig2(), s, 0.2).n_th == 0.2);
}
