#pragma once

#include "cqed/operators.hpp"

#include <string>
#include <vector>

namespace cqed {

/// Physical parameters of the driven two-atom cavity, all rates in one common
/// frequency unit (shipped configurations use κ = 1). Rates are full energy
/// decay rates; the dissipator applies the ½.
struct ModelParams {
    double g = 40.0;        ///< atom-cavity coupling (both atoms)
    double delta_c = 0.0;   ///< cavity detuning Δ = ω_a − ω_L
    double delta_a = 0.0;   ///< atomic detuning δ = ω_e − ω_L
    double epsilon = 0.125; ///< drive strength ε
    double kappa = 1.0;     ///< cavity decay rate
    double gamma = 1.0;     ///< atomic emission rate
    double n_th = 0.0;      ///< mean thermal photon number
    double gamma_d = 0.0;   ///< pure dephasing rate
    int photon_cutoff = 5;  ///< Fock truncation N_max

    /// Sets Δ and δ together (the resonant case used throughout).
    ModelParams& set_detuning(double delta) {
        delta_c = delta;
        delta_a = delta;
        return *this;
    }

    HilbertLayout layout() const { return HilbertLayout(photon_cutoff); }

    /// Throws ArgumentError naming the first violated constraint.
    void validate() const;

    bool operator==(const ModelParams&) const = default;
};

/// Lindblad channel rate/2 · (2dρd† − d†dρ − ρd†d).
struct CollapseOperator {
    ComplexMatrix op;
    double rate = 0.0;
    std::string label;
};

/// H = Δa†a + δΣσᵢ⁺σᵢ⁻ + gΣ(σᵢ⁺a + a†σᵢ⁻) + ε(a† + a), rotating frame.
ComplexMatrix build_hamiltonian(const ModelParams& params);

/// Cavity loss/gain, atomic emission/absorption and dephasing channels;
/// zero-rate channels are left out.
std::vector<CollapseOperator> build_collapse_ops(const ModelParams& params);

/// H − (i/2)(κa†a + γΣσᵢ⁺σᵢ⁻)
ComplexMatrix build_effective_hamiltonian(const ModelParams& params);

}  // namespace cqed
