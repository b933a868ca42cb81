#include "cqed/analytic.hpp"

#include "cqed/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace cqed::analytic {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr Complex kI{0.0, 1.0};

using Vec7 = Eigen::Matrix<Complex, 7, 1>;
using Mat7 = Eigen::Matrix<Complex, 7, 7>;

enum Slot { k0eg = 0, k0ge, k1gg, k1eg, k1ge, k0ee, k2gg };

void require_resonance(const ModelParams& p, const char* what) {
    const double scale = std::max({1.0, std::abs(p.delta_c), std::abs(p.delta_a)});
    if (std::abs(p.delta_c - p.delta_a) > 1e-12 * scale) {
        throw UnsupportedRegime(fmt::format(
            "{} is only available for a resonant cavity (delta_c = delta_a), got {} vs {}", what,
            p.delta_c, p.delta_a));
    }
}

Vec7 to_vec(const AmplitudeSet& a) {
    const auto d = a.dynamic();
    return Eigen::Map<const Vec7>(d.data());
}

AmplitudeSet from_vec(const Vec7& v, Complex a_0gg) {
    std::array<Complex, 7> d{};
    Eigen::Map<Vec7>(d.data()) = v;
    return AmplitudeSet::from_dynamic(d, a_0gg);
}

// i dA/dt = M A + source, with a_0gg entering only through the source.
struct AmplitudeSystem {
    Mat7 m = Mat7::Zero();
    Vec7 source = Vec7::Zero();
};

AmplitudeSystem amplitude_system(const ModelParams& p, Complex a_0gg, Closure closure) {
    const double g = p.g;
    const double eps = p.epsilon;
    const Complex atom = p.delta_a - kI * (p.gamma / 2.0);
    const Complex photon = p.delta_c - kI * (p.kappa / 2.0);

    AmplitudeSystem s;
    Mat7& m = s.m;
    m(k0eg, k0eg) = atom;
    m(k0eg, k1gg) = g;
    m(k0ge, k0ge) = atom;
    m(k0ge, k1gg) = g;
    m(k1gg, k1gg) = photon;
    m(k1gg, k0eg) = g;
    m(k1gg, k0ge) = g;
    for (int slot : {k1eg, k1ge}) {
        m(slot, slot) = atom + photon;
        m(slot, k0ee) = g;
        m(slot, k2gg) = kSqrt2 * g;
    }
    m(k1eg, k0eg) = eps;
    m(k1ge, k0ge) = eps;
    m(k0ee, k0ee) = 2.0 * atom;
    m(k0ee, k1eg) = g;
    m(k0ee, k1ge) = g;
    m(k2gg, k2gg) = 2.0 * photon;
    m(k2gg, k1eg) = kSqrt2 * g;
    m(k2gg, k1ge) = kSqrt2 * g;
    m(k2gg, k1gg) = kSqrt2 * eps;
    if (closure == Closure::Full) {
        m(k0eg, k1eg) = eps;
        m(k0ge, k1ge) = eps;
        m(k1gg, k2gg) = kSqrt2 * eps;
    }
    s.source(k1gg) = eps * a_0gg;
    return s;
}

void require_nonsingular(Complex value, const char* what) {
    if (!(std::abs(value) >= 1e-300)) {
        throw SingularParameters(fmt::format("closed-form denominator {} vanishes", what));
    }
}

}  // namespace

std::array<Complex, 7> AmplitudeSet::dynamic() const {
    return {a_0eg, a_0ge, a_1gg, a_1eg, a_1ge, a_0ee, a_2gg};
}

AmplitudeSet AmplitudeSet::from_dynamic(const std::array<Complex, 7>& v, Complex a_0gg) {
    AmplitudeSet a;
    a.a_0gg = a_0gg;
    a.a_0eg = v[k0eg];
    a.a_0ge = v[k0ge];
    a.a_1gg = v[k1gg];
    a.a_1eg = v[k1eg];
    a.a_1ge = v[k1ge];
    a.a_0ee = v[k0ee];
    a.a_2gg = v[k2gg];
    return a;
}

double AmplitudeSet::max_abs_difference(const AmplitudeSet& other) const {
    double out = std::abs(a_0gg - other.a_0gg);
    const auto lhs = dynamic();
    const auto rhs = other.dynamic();
    for (std::size_t k = 0; k < lhs.size(); ++k) {
        out = std::max(out, std::abs(lhs[k] - rhs[k]));
    }
    return out;
}

SteadyAmplitudes steady_amplitudes(const ModelParams& params) {
    require_resonance(params, "steady_amplitudes");
    const double g = params.g;
    const double eps = params.epsilon;
    const double big_g = params.gamma / 2.0;
    const double big_k = params.kappa / 2.0;
    const double delta = params.delta_c;

    const Complex u = big_g + kI * delta;
    const Complex w = big_k + kI * delta;
    const Complex d1 = 2.0 * g * g + u * w;
    const Complex d2 = u * w * (u + w) + g * g * (2.0 * big_g + 3.0 * kI * delta + big_k);
    require_nonsingular(d1, "2g^2 + uw");
    const Complex d12 = d1 * d2;
    require_nonsingular(d12, "D1*D2");

    SteadyAmplitudes out;
    AmplitudeSet& a = out.amplitudes;
    a.a_0gg = 1.0;
    a.a_0eg = -g * eps / d1;
    a.a_0ge = a.a_0eg;
    a.a_1gg = -kI * eps * u / d1;
    a.a_1eg = kI * g * eps * eps * u * (u + w) / d12;
    a.a_1ge = a.a_1eg;
    a.a_0ee = g * g * eps * eps * (u + w) / d12;
    a.a_2gg = -eps * eps * u * (u * (u + w) - g * g) / (kSqrt2 * d12);

    const double scale = std::min({params.kappa, params.gamma, params.g});
    if (eps > 0.1 * scale) {
        out.warning = fmt::format("epsilon = {} exceeds 0.1*min(kappa, gamma, g) = {}; "
                                  "weak-drive expansion may be inaccurate",
                                  eps, 0.1 * scale);
    }
    return out;
}

double g2_from(const AmplitudeSet& a) {
    const double p1 = std::norm(a.a_1gg);
    if (!(std::sqrt(p1) >= 1e-150)) {
        throw SingularParameters("g2 undefined: single-photon amplitude vanishes");
    }
    return 2.0 * std::norm(a.a_2gg) / (p1 * p1);
}

double nph_from(const AmplitudeSet& a) { return std::norm(a.a_1gg) + 2.0 * std::norm(a.a_2gg); }

double concurrence_from(const AmplitudeSet& a) {
    return 2.0 * std::abs(a.a_0ee - a.a_0ge * a.a_0eg);
}

double g2_analytic(const ModelParams& params) {
    return g2_from(steady_amplitudes(params).amplitudes);
}

double nph_analytic(const ModelParams& params) {
    return nph_from(steady_amplitudes(params).amplitudes);
}

double concurrence_analytic(const ModelParams& params) {
    return concurrence_from(steady_amplitudes(params).amplitudes);
}

std::vector<EigenPair> eigensystem(const ModelParams& params) {
    require_resonance(params, "eigensystem");
    const HilbertLayout layout = params.layout();
    const double g = params.g;
    const double delta = params.delta_c;
    constexpr auto G = Level::Ground;
    constexpr auto E = Level::Excited;

    auto ket = [&](int n, Level a1, Level a2) { return layout.basis_state(n, a1, a2); };
    const double r2 = 1.0 / kSqrt2;
    const double r3 = 1.0 / std::sqrt(3.0);
    const double r6 = 1.0 / std::sqrt(6.0);

    std::vector<EigenPair> out;
    out.push_back({"1_0", params.delta_a, r2 * ket(0, G, E) - r2 * ket(0, E, G)});
    out.push_back({"1_+", delta + kSqrt2 * g, r2 * ket(1, G, G) + 0.5 * ket(0, G, E) + 0.5 * ket(0, E, G)});
    out.push_back({"1_-", delta - kSqrt2 * g, r2 * ket(1, G, G) - 0.5 * ket(0, G, E) - 0.5 * ket(0, E, G)});
    out.push_back({"2_01", 2.0 * delta, r3 * ket(2, G, G) - (std::sqrt(6.0) / 3.0) * ket(0, E, E)});
    out.push_back({"2_02", 2.0 * delta, r2 * ket(1, G, E) - r2 * ket(1, E, G)});
    out.push_back({"2_+", 2.0 * delta + std::sqrt(6.0) * g,
                   r3 * ket(2, G, G) + 0.5 * ket(1, G, E) + 0.5 * ket(1, E, G) + r6 * ket(0, E, E)});
    out.push_back({"2_-", 2.0 * delta - std::sqrt(6.0) * g,
                   r3 * ket(2, G, G) - 0.5 * ket(1, G, E) - 0.5 * ket(1, E, G) + r6 * ket(0, E, E)});
    return out;
}

AmplitudeSet amplitude_derivative(const ModelParams& params, const AmplitudeSet& a, Closure closure) {
    const AmplitudeSystem s = amplitude_system(params, a.a_0gg, closure);
    const Vec7 rate = -kI * (s.m * to_vec(a) + s.source);
    return from_vec(rate, 0.0);
}

double default_time_step(const ModelParams& params) {
    return 0.001 / std::max({params.kappa, params.gamma, params.g, std::abs(params.delta_c), 1.0});
}

AmplitudeSet integrate_amplitudes(const ModelParams& params, const AmplitudeSet& initial,
                                  double t_final, double dt, Closure closure) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ArgumentError("time step must be positive");
    }
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
        throw ArgumentError("final time must be non-negative");
    }
    const AmplitudeSystem s = amplitude_system(params, initial.a_0gg, closure);
    const Mat7 gen = -kI * s.m;
    const Vec7 src = -kI * s.source;
    auto f = [&](const Vec7& y) -> Vec7 { return gen * y + src; };

    const long steps = static_cast<long>(std::ceil(t_final / dt - 1e-9));
    const double h = steps > 0 ? t_final / static_cast<double>(steps) : 0.0;
    Vec7 y = to_vec(initial);
    for (long n = 0; n < steps; ++n) {
        const Vec7 k1 = f(y);
        const Vec7 k2 = f(y + 0.5 * h * k1);
        const Vec7 k3 = f(y + 0.5 * h * k2);
        const Vec7 k4 = f(y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!y.allFinite()) {
            throw Instability(fmt::format("amplitude integration diverged at step {} (t = {})", n + 1,
                                          (n + 1) * h),
                              n + 1);
        }
    }
    return from_vec(y, initial.a_0gg);
}

ComplexVector dark_state(const ModelParams& params) {
    if (params.delta_c != 0.0) {
        throw UnsupportedRegime(
            fmt::format("dark state is defined at delta = 0 only, got {}", params.delta_c));
    }
    const HilbertLayout layout = params.layout();
    ComplexVector v = params.g * layout.basis_state(0, Level::Ground, Level::Ground) -
                      (params.epsilon / 2.0) * (layout.basis_state(0, Level::Ground, Level::Excited) +
                                                layout.basis_state(0, Level::Excited, Level::Ground));
    const double norm = v.norm();
    if (!(norm > 0.0)) {
        throw SingularParameters("dark state vanishes for g = epsilon = 0");
    }
    return v / norm;
}

ComplexVector ansatz_state(const AmplitudeSet& a, const HilbertLayout& layout) {
    if (layout.photon_cutoff() < 2) {
        throw ArgumentError("ansatz needs a photon cutoff of at least 2");
    }
    constexpr auto G = Level::Ground;
    constexpr auto E = Level::Excited;
    ComplexVector v = ComplexVector::Zero(layout.dim());
    v(layout.index(0, G, G)) = a.a_0gg;
    v(layout.index(0, G, E)) = a.a_0ge;
    v(layout.index(0, E, G)) = a.a_0eg;
    v(layout.index(1, G, G)) = a.a_1gg;
    v(layout.index(1, G, E)) = a.a_1ge;
    v(layout.index(1, E, G)) = a.a_1eg;
    v(layout.index(0, E, E)) = a.a_0ee;
    v(layout.index(2, G, G)) = a.a_2gg;
    return v;
}

ComplexMatrix ansatz_atom_matrix(const AmplitudeSet& a) {
    const HilbertLayout layout(2);
    const ComplexVector psi = ansatz_state(a, layout);
    ComplexMatrix out = ComplexMatrix::Zero(4, 4);
    for (int n = 0; n < layout.cavity_dim(); ++n) {
        const ComplexVector block = psi.segment(4 * n, 4);
        out += block * block.adjoint();
    }
    return out;
}

}  // namespace cqed::analytic
