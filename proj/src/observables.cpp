#include "cqed/observables.hpp"

#include "cqed/error.hpp"

#include <fmt/format.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace cqed {

HilbertLayout layout_of(const DensityMatrix& rho) {
    const int d = rho.dim();
    if (d % 4 != 0 || d < 4) {
        throw ArgumentError(fmt::format("dimension {} is not a cavity ⊗ atom ⊗ atom layout", d));
    }
    return HilbertLayout(d / 4 - 1);
}

namespace {

double real_trace(const ComplexMatrix& m, const char* what) {
    const Complex t = m.trace();
    if (std::abs(t.imag()) >= 1e-10) {
        throw ArgumentError(fmt::format("{} has imaginary part {:.3g}", what, t.imag()));
    }
    return t.real();
}

}  // namespace

double mean_photon(const DensityMatrix& rho) {
    const HilbertLayout layout = layout_of(rho);
    return real_trace(rho.matrix() * number(layout), "tr(rho a+a)");
}

std::optional<double> g2_zero(const DensityMatrix& rho) {
    const HilbertLayout layout = layout_of(rho);
    const ComplexMatrix a = annihilation(layout);
    const ComplexMatrix ad = a.adjoint();
    const double n = real_trace(rho.matrix() * ad * a, "tr(rho a+a)");
    if (n < kG2PhotonFloor) {
        return std::nullopt;
    }
    const double pairs = real_trace(rho.matrix() * ad * ad * a * a, "tr(rho a+a+aa)");
    return pairs / (n * n);
}

DensityMatrix reduce_to_atoms(const DensityMatrix& rho) {
    const HilbertLayout layout = layout_of(rho);
    ComplexMatrix out = ComplexMatrix::Zero(4, 4);
    for (int n = 0; n < layout.cavity_dim(); ++n) {
        out += rho.matrix().block(4 * n, 4 * n, 4, 4);
    }
    return DensityMatrix(std::move(out));
}

ComplexMatrix spin_flip() {
    ComplexMatrix sy(2, 2);
    sy << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return kron(sy, sy);
}

double wootters_concurrence(const ComplexMatrix& rho_ab) {
    if (rho_ab.rows() != 4 || rho_ab.cols() != 4) {
        throw ArgumentError(fmt::format("concurrence needs a 4x4 matrix, got {}x{}", rho_ab.rows(),
                                        rho_ab.cols()));
    }
    if (max_abs(rho_ab - rho_ab.adjoint()) > DensityMatrix::kHermiticityTolerance) {
        throw ArgumentError("concurrence input is not Hermitian");
    }
    // The λᵢ (square roots of the eigenvalues of ρρ̃) are the singular values of
    // √ρ·S·conj(√ρ). Working with them directly keeps relative precision for
    // weakly entangled states, where the eigenvalues of ρρ̃ sit near round-off.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (rho_ab + rho_ab.adjoint()));
    const Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const ComplexMatrix root = es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    const Eigen::JacobiSVD<ComplexMatrix> svd(root * spin_flip() * root.conjugate());

    std::array<double, 4> roots{};
    for (int k = 0; k < 4; ++k) {
        roots[k] = svd.singularValues()(k);
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

double concurrence(const DensityMatrix& rho_ab) {
    return std::min(1.0, wootters_concurrence(rho_ab.matrix()));
}

ObservableSet evaluate_observables(const DensityMatrix& rho) {
    ObservableSet out;
    out.n_ph = std::max(0.0, mean_photon(rho));
    out.g2_zero = g2_zero(rho);
    out.concurrence = concurrence(reduce_to_atoms(rho).clamped());
    return out;
}

}  // namespace cqed
