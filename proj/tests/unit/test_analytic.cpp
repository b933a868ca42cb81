#include "cqed/analytic.hpp"
#include "cqed/error.hpp"
#include "cqed/liouvillian.hpp"
#include "cqed/observables.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace cqed;
using namespace cqed::analytic;

namespace {

constexpr auto G = Level::Ground;
constexpr auto E = Level::Excited;

ModelParams fig2(double delta = 0.0) {
    ModelParams p;
    p.g = 40.0;
    p.epsilon = 0.125;
    p.set_detuning(delta);
    return p;
}

const double kRoot2G = std::sqrt(2.0) * 40.0;

// Basis indices of the ansatz amplitudes, in AmplitudeSet::dynamic() order.
std::vector<int> ansatz_indices(const HilbertLayout& l) {
    return {l.index(0, E, G), l.index(0, G, E), l.index(1, G, G), l.index(1, E, G),
            l.index(1, G, E), l.index(0, E, E), l.index(2, G, G)};
}

ComplexMatrix restrict(const ComplexMatrix& h, const std::vector<int>& rows, const std::vector<int>& cols) {
    ComplexMatrix out(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            out(r, c) = h(rows[r], cols[c]);
        }
    }
    return out;
}

// Oracle: weak-drive steady state straight from the effective Hamiltonian.
// One-excitation block driven by |0,g,g>, then two-excitation block driven by
// the one-excitation amplitudes.
AmplitudeSet perturbative_oracle(const ModelParams& p) {
    const HilbertLayout l = p.layout();
    const ComplexMatrix h = build_effective_hamiltonian(p);
    const std::vector<int> ground{l.index(0, G, G)};
    const std::vector<int> one{l.index(0, E, G), l.index(0, G, E), l.index(1, G, G)};
    const std::vector<int> two{l.index(1, E, G), l.index(1, G, E), l.index(0, E, E), l.index(2, G, G)};
    const ComplexVector a1 = restrict(h, one, one).fullPivLu().solve(-restrict(h, one, ground).col(0));
    const ComplexVector a2 = restrict(h, two, two).fullPivLu().solve(-restrict(h, two, one) * a1);
    return AmplitudeSet::from_dynamic({a1(0), a1(1), a1(2), a2(0), a2(1), a2(2), a2(3)});
}

struct Extremum {
    double location;
    bool is_min;
};

std::vector<Extremum> grid_extrema(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<Extremum> out;
    for (std::size_t k = 1; k + 1 < x.size(); ++k) {
        if (y[k] < y[k - 1] && y[k] < y[k + 1]) out.push_back({x[k], true});
        if (y[k] > y[k - 1] && y[k] > y[k + 1]) out.push_back({x[k], false});
    }
    return out;
}

bool has_extremum_near(const std::vector<Extremum>& ex, double target, bool is_min, double tol) {
    for (const auto& e : ex) {
        if (e.is_min == is_min && std::abs(e.location - target) / std::abs(target) < tol) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("eigensystem matches the undriven Hamiltonian") {
    ModelParams p = fig2(3.0);
    p.epsilon = 0.0;
    const auto pairs = eigensystem(p);
    REQUIRE(pairs.size() == 7);
    const ComplexMatrix h = build_hamiltonian(p);
    for (const auto& e : pairs) {
        CHECK(std::abs(e.vector.norm() - 1.0) < 1e-12);
        CHECK((h * e.vector - e.energy * e.vector).norm() < 1e-10);
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            if (pairs[i].energy != pairs[j].energy) {
                CHECK(std::abs(pairs[i].vector.dot(pairs[j].vector)) < 1e-12);
            }
        }
    }
    const HilbertLayout l = p.layout();
    const auto& plus = pairs[1];
    CHECK(plus.label == "1_+");
    CHECK(std::abs(plus.vector(l.index(1, G, G)) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(plus.vector(l.index(0, G, E)) - 0.5) < 1e-15);
    CHECK(std::abs(plus.vector(l.index(0, E, G)) - 0.5) < 1e-15);
    CHECK(std::abs(plus.vector.dot(pairs[2].vector)) < 1e-15);

    p.delta_a = 4.0;
    CHECK_THROWS_AS(eigensystem(p), UnsupportedRegime);
}

TEST_CASE("steady amplitudes match the perturbative solve of the effective Hamiltonian") {
    for (double delta : {0.0, 7.0, -30.0, kRoot2G, 0.5 * std::sqrt(6.0) * 40.0, 95.0}) {
        for (double gamma : {1.0, 0.3}) {
            ModelParams p = fig2(delta);
            p.gamma = gamma;
            p.kappa = 1.7;
            const auto closed = steady_amplitudes(p).amplitudes;
            const auto oracle = perturbative_oracle(p);
            const auto lhs = closed.dynamic();
            const auto rhs = oracle.dynamic();
            for (std::size_t k = 0; k < lhs.size(); ++k) {
                CHECK(std::abs(lhs[k] - rhs[k]) <= 1e-10 * std::abs(rhs[k]) + 1e-18);
            }
        }
    }
}

TEST_CASE("steady amplitude limits and errors") {
    ModelParams p = fig2(10.0);
    p.epsilon = 0.0;
    const auto zero = steady_amplitudes(p);
    CHECK(zero.amplitudes.a_0gg == Complex(1.0));
    for (auto a : zero.amplitudes.dynamic()) CHECK(a == Complex(0.0));
    CHECK_FALSE(zero.warning.has_value());
    CHECK(nph_analytic(p) == 0.0);
    CHECK(concurrence_analytic(p) == 0.0);
    CHECK_THROWS_AS(g2_analytic(p), SingularParameters);

    for (double d : {-50.0, 0.0, 33.0}) {
        const auto a = steady_amplitudes(fig2(d)).amplitudes;
        CHECK(a.a_0ge == a.a_0eg);
        CHECK(a.a_1ge == a.a_1eg);
    }
    CHECK(steady_amplitudes(fig2()).warning.has_value());
    ModelParams weak = fig2();
    weak.epsilon = 0.05;
    CHECK_FALSE(steady_amplitudes(weak).warning.has_value());

    ModelParams off = fig2(5.0);
    off.delta_a = 6.0;
    CHECK_THROWS_AS(steady_amplitudes(off), UnsupportedRegime);

    ModelParams singular = fig2();
    singular.g = 0.0;
    singular.kappa = 0.0;
    singular.gamma = 0.0;
    CHECK_THROWS_AS(steady_amplitudes(singular), SingularParameters);
}

TEST_CASE("analytic observables are consistent with the amplitudes") {
    const auto a = steady_amplitudes(fig2(kRoot2G)).amplitudes;
    CHECK(g2_analytic(fig2(kRoot2G)) == 2.0 * std::norm(a.a_2gg) / std::pow(std::norm(a.a_1gg), 2));
    CHECK(concurrence_analytic(fig2(kRoot2G)) == 2.0 * std::abs(a.a_0ee - a.a_0ge * a.a_0eg));
    CHECK(nph_analytic(fig2(kRoot2G)) == std::norm(a.a_1gg) + 2.0 * std::norm(a.a_2gg));
}

TEST_CASE("analytic observables are even in the detuning") {
    for (int k = 0; k < 100; ++k) {
        const double d = 0.37 + k * 1.013;
        CHECK(g2_analytic(fig2(d)) == doctest::Approx(g2_analytic(fig2(-d))).epsilon(1e-10));
        CHECK(nph_analytic(fig2(d)) == doctest::Approx(nph_analytic(fig2(-d))).epsilon(1e-10));
        CHECK(concurrence_analytic(fig2(d)) == doctest::Approx(concurrence_analytic(fig2(-d))).epsilon(1e-10));
    }
}

TEST_CASE("analytic extrema on the fig2 grid") {
    std::vector<double> x;
    std::vector<double> g2;
    std::vector<double> conc;
    for (int k = 0; k <= 400; ++k) {
        x.push_back(-100.0 + 0.5 * k);
        g2.push_back(g2_analytic(fig2(x.back())));
        conc.push_back(concurrence_analytic(fig2(x.back())));
    }
    const auto g2_ex = grid_extrema(x, g2);
    const auto conc_ex = grid_extrema(x, conc);
    const double bunch = 0.5 * std::sqrt(6.0) * 40.0;
    for (double s : {1.0, -1.0}) {
        CHECK(has_extremum_near(g2_ex, s * kRoot2G, true, 0.01));
        CHECK(has_extremum_near(g2_ex, s * bunch, false, 0.01));
        CHECK(has_extremum_near(conc_ex, s * kRoot2G, false, 0.02));
        CHECK(has_extremum_near(conc_ex, s * bunch, false, 0.02));
    }
    CHECK(concurrence_analytic(fig2(0.0)) < 1e-2 * concurrence_analytic(fig2(kRoot2G)));
}

TEST_CASE("closed form against the master equation: gap closes as epsilon squared") {
    // At ε/κ = 0.125 the populations differ by ~6%; the weak-drive gap must
    // fall below 3% by ε/κ = 0.0625 and shrink about fourfold per halving.
    auto gaps = [](double eps) {
        ModelParams p = fig2(kRoot2G);
        p.epsilon = eps;
        const auto a = steady_amplitudes(p).amplitudes;
        const auto s = solve_steady_state(p);
        const HilbertLayout l = p.layout();
        const double p1 = s.rho.matrix()(l.index(1, G, G), l.index(1, G, G)).real();
        const double p2 = s.rho.matrix()(l.index(2, G, G), l.index(2, G, G)).real();
        return std::array<double, 3>{std::abs(std::norm(a.a_1gg) - p1) / p1,
                                     std::abs(std::norm(a.a_2gg) - p2) / p2,
                                     std::abs(nph_from(a) - mean_photon(s.rho)) / mean_photon(s.rho)};
    };
    const auto coarse = gaps(0.0625);
    const auto fine = gaps(0.03125);
    for (int k = 0; k < 3; ++k) {
        CHECK(coarse[k] < 0.03);
        CHECK(coarse[k] / fine[k] == doctest::Approx(4.0).epsilon(0.15));
    }
}

TEST_CASE("amplitude equations follow the effective Hamiltonian") {
    ModelParams p = fig2(21.0);
    p.kappa = 1.4;
    p.gamma = 0.6;
    const HilbertLayout l = p.layout();
    const ComplexMatrix h = build_effective_hamiltonian(p);
    AmplitudeSet a;
    a.a_0eg = Complex(0.1, 0.2);
    a.a_0ge = Complex(-0.3, 0.05);
    a.a_1gg = Complex(0.2, -0.1);
    a.a_1eg = Complex(0.01, 0.02);
    a.a_1ge = Complex(-0.02, 0.03);
    a.a_0ee = Complex(0.04, -0.01);
    a.a_2gg = Complex(0.03, 0.02);
    // Full closure: dA/dt = −i H_eff |Ψ>, projected onto the ansatz states.
    const ComplexVector rate = Complex(0.0, -1.0) * (h * ansatz_state(a, l));
    const auto idx = ansatz_indices(l);
    const auto full = amplitude_derivative(p, a, Closure::Full).dynamic();
    for (std::size_t k = 0; k < idx.size(); ++k) {
        CHECK(std::abs(full[k] - rate(idx[k])) < 1e-13);
    }
    // Leading order drops the drive from two- into one-excitation amplitudes.
    const auto lead = amplitude_derivative(p, a).dynamic();
    const Complex i(0.0, 1.0);
    CHECK(std::abs(lead[0] - (full[0] + i * p.epsilon * a.a_1eg)) < 1e-13);
    CHECK(std::abs(lead[1] - (full[1] + i * p.epsilon * a.a_1ge)) < 1e-13);
    CHECK(std::abs(lead[2] - (full[2] + i * std::sqrt(2.0) * p.epsilon * a.a_2gg)) < 1e-13);
    for (int k = 3; k < 7; ++k) CHECK(lead[k] == full[k]);
}

TEST_CASE("closed form is a fixed point of the amplitude equations") {
    const ModelParams p = fig2(kRoot2G);
    const auto steady = steady_amplitudes(p).amplitudes;
    double worst = 0.0;
    for (auto d : amplitude_derivative(p, steady).dynamic()) worst = std::max(worst, std::abs(d));
    CHECK(worst < 1e-10 * p.epsilon);

    const auto end = integrate_amplitudes(p, AmplitudeSet{}, 50.0, default_time_step(p));
    CHECK(end.max_abs_difference(steady) < 1e-4);
    CHECK(default_time_step(p) == doctest::Approx(0.001 / kRoot2G));
}

TEST_CASE("undriven amplitudes decay") {
    ModelParams p = fig2(10.0);
    p.epsilon = 0.0;
    AmplitudeSet a;
    a.a_0eg = 0.3;
    a.a_1gg = Complex(0.0, 0.4);
    a.a_0ee = 0.2;
    a.a_2gg = -0.1;
    auto norm = [](const AmplitudeSet& s) {
        double n = 0.0;
        for (auto x : s.dynamic()) n += std::norm(x);
        return n;
    };
    double previous = norm(a);
    for (int k = 0; k < 40; ++k) {
        a = integrate_amplitudes(p, a, 0.25, default_time_step(p), Closure::Full);
        const double now = norm(a);
        CHECK(now <= previous);
        previous = now;
    }
    CHECK(previous < 1e-3 * 0.30);
}

TEST_CASE("integration argument checks and divergence") {
    const ModelParams p = fig2(kRoot2G);
    CHECK_THROWS_AS(integrate_amplitudes(p, AmplitudeSet{}, 1.0, 0.0), ArgumentError);
    CHECK_THROWS_AS(integrate_amplitudes(p, AmplitudeSet{}, -1.0, 0.1), ArgumentError);
    CHECK(integrate_amplitudes(p, AmplitudeSet{}, 0.0, 0.1).max_abs_difference(AmplitudeSet{}) == 0.0);
    try {
        integrate_amplitudes(p, AmplitudeSet{}, 5000.0, 10.0);
        FAIL("expected divergence");
    } catch (const Instability& e) {
        CHECK(e.step() > 0);
        CHECK(e.step() <= 500);
    }
}

TEST_CASE("dark state") {
    ModelParams p = fig2();
    p.g = 1.0;
    p.epsilon = 0.0;
    const ComplexVector d = dark_state(p);
    CHECK((d - p.layout().basis_state(0, G, G)).norm() == 0.0);

    const ModelParams q = fig2();
    const ComplexVector dark = dark_state(q);
    CHECK(std::abs(dark.norm() - 1.0) < 1e-12);
    const ComplexMatrix rho = solve_steady_state(q).rho.matrix();
    const ComplexVector ground = q.layout().basis_state(0, G, G);
    CHECK(std::real(dark.dot(rho * dark)) > std::real(ground.dot(rho * ground)));

    CHECK_THROWS_AS(dark_state(fig2(1.0)), UnsupportedRegime);
}

TEST_CASE("ansatz helpers") {
    const auto a = steady_amplitudes(fig2(kRoot2G)).amplitudes;
    CHECK_THROWS_AS(ansatz_state(a, HilbertLayout(1)), ArgumentError);
    const ComplexVector psi = ansatz_state(a, HilbertLayout(4));
    const ComplexMatrix reduced = ansatz_atom_matrix(a);
    CHECK(std::abs(reduced.trace().real() - psi.squaredNorm()) < 1e-15);
    CHECK(std::abs(reduced(3, 3) - (std::norm(a.a_0ee))) < 1e-18);
}
