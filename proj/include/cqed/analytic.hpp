#pragma once

#include "cqed/model.hpp"
#include "cqed/operators.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cqed::analytic {

/// Amplitudes of the truncated pure-state ansatz over the eight states with
/// at most two excitations. The steady solution is unnormalized with
/// a_0gg = 1.
struct AmplitudeSet {
    Complex a_0gg{1.0, 0.0};
    Complex a_0ge{};
    Complex a_0eg{};
    Complex a_1gg{};
    Complex a_1ge{};
    Complex a_1eg{};
    Complex a_0ee{};
    Complex a_2gg{};

    /// The seven driven amplitudes (everything except a_0gg) in the order
    /// 0eg, 0ge, 1gg, 1eg, 1ge, 0ee, 2gg.
    std::array<Complex, 7> dynamic() const;
    static AmplitudeSet from_dynamic(const std::array<Complex, 7>& v, Complex a_0gg = 1.0);

    double max_abs_difference(const AmplitudeSet& other) const;
};

struct SteadyAmplitudes {
    AmplitudeSet amplitudes;
    /// Set when ε > 0.1·min(κ, γ, g), where the weak-drive expansion is
    /// expected to lose accuracy.
    std::optional<std::string> warning;
};

/// Closed-form weak-drive steady state (a_0gg → 1, terms beyond ε² dropped).
///
/// In terms of G = γ/2, K = κ/2, u = G + iΔ, w = K + iΔ and
///   D₁ = 2g² + uw,  D₂ = uw(u + w) + g²(2G + 3iΔ + K):
///   a_0eg = a_0ge = −gε/D₁,          a_1gg = −iεu/D₁,
///   a_1eg = a_1ge = igε²u(u+w)/(D₁D₂),  a_0ee = g²ε²(u+w)/(D₁D₂),
///   a_2gg = −ε²u(u(u+w) − g²)/(√2 D₁D₂).
///
/// Requires δ = Δ (UnsupportedRegime otherwise); throws SingularParameters
/// when a denominator vanishes.
SteadyAmplitudes steady_amplitudes(const ModelParams& params);

/// 2|a_2gg|²/|a_1gg|⁴
double g2_analytic(const ModelParams& params);
/// |a_1gg|² + 2|a_2gg|²
double nph_analytic(const ModelParams& params);
/// 2|a_0ee − a_0ge·a_0eg|
double concurrence_analytic(const ModelParams& params);

double g2_from(const AmplitudeSet& a);
double nph_from(const AmplitudeSet& a);
double concurrence_from(const AmplitudeSet& a);

struct EigenPair {
    std::string label;
    double energy = 0.0;
    ComplexVector vector;  ///< in params.layout()
};

/// The seven excited dressed states of the undriven Hamiltonian with at most
/// two excitations: 1₀, 1±, 2₀₁, 2₀₂, 2±. Requires δ = Δ.
std::vector<EigenPair> eigensystem(const ModelParams& params);

/// Which terms of the amplitude equations are kept.
enum class Closure {
    /// Every coupling of the ansatz, including the ε-terms that feed
    /// two-excitation amplitudes back into the one-excitation ones.
    Full,
    /// Drops those back-action terms (orders above ε² in the steady state);
    /// the closed form is its exact fixed point. Default.
    LeadingOrder,
};

/// dA/dt of the amplitude equations with a_0gg held fixed.
AmplitudeSet amplitude_derivative(const ModelParams& params, const AmplitudeSet& a,
                                  Closure closure = Closure::LeadingOrder);

/// dt = 0.001 / max(κ, γ, g, |Δ|, 1)
double default_time_step(const ModelParams& params);

/// Fixed-step RK4 integration of the amplitude equations from `initial`.
/// Throws ArgumentError for dt ≤ 0 or t_final < 0 and Instability on
/// non-finite values.
AmplitudeSet integrate_amplitudes(const ModelParams& params, const AmplitudeSet& initial,
                                  double t_final, double dt, Closure closure = Closure::LeadingOrder);

/// Normalized g|0,g,g> − (ε/2)(|0,g,e> + |0,e,g>), only defined at Δ = 0.
ComplexVector dark_state(const ModelParams& params);

/// The ansatz |Ψ> in the composite layout (not normalized).
ComplexVector ansatz_state(const AmplitudeSet& a, const HilbertLayout& layout);

/// Tr_C |Ψ><Ψ| of the ansatz, unnormalized, basis |gg>, |ge>, |eg>, |ee>.
ComplexMatrix ansatz_atom_matrix(const AmplitudeSet& a);

}  // namespace cqed::analytic
