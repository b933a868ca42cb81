#include "cqed/config.hpp"
#include "cqed/error.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace cqed;

namespace {
const std::string config_dir = CQED_CONFIG_DIR;
}

TEST_CASE("shipped fig2 configuration") {
    const LabConfig cfg = load_config(config_dir + "/fig2.cfg");
    CHECK(cfg.model.g == 40.0);
    CHECK(cfg.model.kappa == 1.0);
    CHECK(cfg.model.gamma == 1.0);
    CHECK(cfg.model.epsilon == 0.125);
    CHECK(cfg.model.n_th == 0.0);
    CHECK(cfg.model.gamma_d == 0.0);
    CHECK(cfg.model.photon_cutoff == 5);
    CHECK(cfg.sweep.variable == SweepVariable::Delta);
    const auto grid = cfg.sweep.grid();
    REQUIRE(grid.size() == 401);
    CHECK(grid.front() == -100.0);
    CHECK(grid.back() == 100.0);
    CHECK(grid[200] == doctest::Approx(0.0));
    CHECK(grid[1] - grid[0] == doctest::Approx(0.5));
}

TEST_CASE("shipped fig3 configuration") {
    const LabConfig cfg = load_config(config_dir + "/fig3.cfg");
    CHECK(cfg.model.epsilon / cfg.model.g == doctest::Approx(0.0065));
    CHECK(cfg.model.delta_c == doctest::Approx(std::sqrt(2.0) * cfg.model.g));
    CHECK(cfg.model.delta_a == cfg.model.delta_c);
    CHECK(cfg.sweep.variable == SweepVariable::Kappa);
    CHECK(cfg.sweep.log_spaced);
    CHECK(cfg.sweep.tie_gamma_to_kappa);
    const auto grid = cfg.sweep.grid();
    REQUIRE(grid.size() == 6);
    CHECK(grid.back() / grid.front() == doctest::Approx(10.0));
    CHECK(grid[1] / grid[0] == doctest::Approx(grid[5] / grid[4]));
}

TEST_CASE("shipped fig4 configuration") {
    const LabConfig cfg = load_config(config_dir + "/fig4.cfg");
    CHECK(cfg.sweep.variable == SweepVariable::NTh);
    REQUIRE(cfg.n_th_ladder.size() == 12);
    CHECK(cfg.n_th_ladder.front() == 0.0);
    CHECK(cfg.n_th_ladder[1] == 3e-5);
    CHECK(cfg.n_th_ladder.back() == 0.1);
    CHECK(cfg.sweep.grid() == cfg.n_th_ladder);
    for (std::size_t k = 2; k < cfg.n_th_ladder.size(); ++k) {
        CHECK(cfg.n_th_ladder[k] / cfg.n_th_ladder[k - 1] == doctest::Approx(2.2508).epsilon(1e-3));
    }
}

TEST_CASE("parsing details") {
    const LabConfig cfg = parse_config(R"(
; comment
[model]
g = 10
delta = 2
delta_a = 3
epsilon = 0
kappa = 2
[numerics]
photon_cutoff = 7
workers = 3
)");
    CHECK(cfg.model.g == 10.0);
    CHECK(cfg.model.delta_c == 2.0);
    CHECK(cfg.model.delta_a == 3.0);
    CHECK(cfg.model.epsilon == 0.0);
    CHECK(cfg.model.photon_cutoff == 7);
    CHECK(cfg.numerics.workers == 3);
    // no [sweep] section: detuning sweep over ±2.5g
    CHECK(cfg.sweep.variable == SweepVariable::Delta);
    CHECK(cfg.sweep.from == -25.0);
    CHECK(cfg.sweep.to == 25.0);
    CHECK(cfg.sweep.points == 401);
}

TEST_CASE("configuration errors") {
    CHECK_THROWS_AS(load_config(config_dir + "/does-not-exist.cfg"), ConfigError);
    CHECK_THROWS_AS(parse_config("[model]\nkappa = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[model]\ng = forty\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[model\ng = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[sweep]\nvar = temperature\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[sweep]\nvar = delta\nscale = logarithmic\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[sweep]\nvalues = 1, x\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[numerics]\nphoton_cutoff = 1\n"), ConfigError);
}

TEST_CASE("sweep grid errors") {
    SweepSpec s;
    s.from = 1.0;
    s.to = 1.0;
    CHECK_THROWS_AS(s.grid(), ConfigError);
    s.to = std::nan("");
    CHECK_THROWS_AS(s.grid(), ConfigError);
    s.to = 2.0;
    s.points = 0;
    CHECK_THROWS_AS(s.grid(), ConfigError);
    s.points = 3;
    s.from = -1.0;
    s.log_spaced = true;
    CHECK_THROWS_AS(s.grid(), ConfigError);
    s.log_spaced = false;
    CHECK(s.grid() == std::vector<double>{-1.0, 0.5, 2.0});
    s.points = 1;
    s.to = s.from;
    CHECK(s.grid() == std::vector<double>{-1.0});
    CHECK_THROWS_AS(parse_sweep_variable("Delta"), ConfigError);
    CHECK(to_string(parse_sweep_variable("n_th")) == "n_th");
}
