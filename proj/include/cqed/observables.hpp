#pragma once

#include "cqed/liouvillian.hpp"
#include "cqed/operators.hpp"

#include <optional>

namespace cqed {

/// Below this mean photon number g²(0) is reported as undefined.
inline constexpr double kG2PhotonFloor = 1e-12;

struct ObservableSet {
    double n_ph = 0.0;
    std::optional<double> g2_zero;  ///< empty when n_ph < kG2PhotonFloor
    double concurrence = 0.0;
};

/// Layout of a composite-space density matrix, inferred from its dimension.
HilbertLayout layout_of(const DensityMatrix& rho);

/// tr(ρ a†a)
double mean_photon(const DensityMatrix& rho);

/// tr(ρ a†a†aa) / tr(ρ a†a)²
std::optional<double> g2_zero(const DensityMatrix& rho);

/// Partial trace over the cavity; basis order |gg>, |ge>, |eg>, |ee>.
DensityMatrix reduce_to_atoms(const DensityMatrix& rho);

/// Wootters concurrence of a Hermitian positive 4×4 matrix. No trace
/// normalization is applied (the result scales linearly with the matrix).
/// Throws ArgumentError for non-4×4 or non-Hermitian input.
double wootters_concurrence(const ComplexMatrix& rho_ab);

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho_ab);

/// σ_y ⊗ σ_y
ComplexMatrix spin_flip();

ObservableSet evaluate_observables(const DensityMatrix& rho);

}  // namespace cqed
