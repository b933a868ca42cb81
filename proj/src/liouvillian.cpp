#include "cqed/liouvillian.hpp"

#include "cqed/error.hpp"

#include <fmt/format.h>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>

namespace cqed {

Liouvillian::Liouvillian(ComplexMatrix matrix, int hilbert_dim, bool dissipative)
    : matrix_(std::move(matrix)), hilbert_dim_(hilbert_dim), dissipative_(dissipative) {
    const Eigen::Index d2 = static_cast<Eigen::Index>(hilbert_dim) * hilbert_dim;
    if (hilbert_dim < 1 || matrix_.rows() != d2 || matrix_.cols() != d2) {
        throw ArgumentError("Liouvillian dimension must be the square of the Hilbert dimension");
    }
}

ComplexMatrix Liouvillian::apply(const ComplexMatrix& rho) const {
    return unvectorize(matrix_ * vectorize(rho), hilbert_dim_);
}

ComplexVector vectorize(const ComplexMatrix& m) {
    return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, int dim) {
    if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
        throw ArgumentError("vector length is not dim^2");
    }
    return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

namespace {

void check_operator(const ComplexMatrix& op, Eigen::Index d, const char* what) {
    if (op.rows() != d || op.cols() != d) {
        throw ArgumentError(fmt::format("{} has shape {}x{}, expected {}x{}", what, op.rows(),
                                        op.cols(), d, d));
    }
}

}  // namespace

Liouvillian build_liouvillian(const ComplexMatrix& hamiltonian,
                              std::span<const CollapseOperator> collapse_ops) {
    const Eigen::Index d = hamiltonian.rows();
    check_operator(hamiltonian, d, "Hamiltonian");
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    const Complex minus_i(0.0, -1.0);

    // vec(AρB) = (Bᵀ ⊗ A) vec(ρ)
    ComplexMatrix l = minus_i * (kron(id, hamiltonian) - kron(hamiltonian.transpose(), id));
    bool dissipative = false;
    for (const auto& c : collapse_ops) {
        check_operator(c.op, d, "collapse operator");
        if (c.rate < 0.0) {
            throw ArgumentError("collapse rate must be non-negative");
        }
        if (c.rate == 0.0) {
            continue;
        }
        dissipative = true;
        const ComplexMatrix cdc = c.op.adjoint() * c.op;
        l += (0.5 * c.rate) *
             (2.0 * kron(c.op.conjugate(), c.op) - kron(id, cdc) - kron(cdc.transpose(), id));
    }
    return Liouvillian(std::move(l), static_cast<int>(d), dissipative);
}

ComplexMatrix master_equation_rhs(const ComplexMatrix& hamiltonian,
                                  std::span<const CollapseOperator> collapse_ops,
                                  const ComplexMatrix& rho) {
    ComplexMatrix out = Complex(0.0, -1.0) * (hamiltonian * rho - rho * hamiltonian);
    for (const auto& c : collapse_ops) {
        const ComplexMatrix cd = c.op.adjoint();
        const ComplexMatrix cdc = cd * c.op;
        out += (0.5 * c.rate) * (2.0 * c.op * rho * cd - cdc * rho - rho * cdc);
    }
    return out;
}

StateDiagnostics diagnose(const ComplexMatrix& rho) {
    StateDiagnostics d;
    d.hermiticity_error = max_abs(rho - rho.adjoint());
    d.trace_error = std::abs(rho.trace() - 1.0);
    const ComplexMatrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = es.eigenvalues().minCoeff();
    return d;
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, double positivity_tolerance)
    : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
        throw ArgumentError("density matrix must be square and non-empty");
    }
    diagnostics_ = diagnose(matrix_);
    if (diagnostics_.hermiticity_error > kHermiticityTolerance) {
        throw ArgumentError(fmt::format("density matrix not Hermitian (error {:.3g})",
                                        diagnostics_.hermiticity_error));
    }
    if (diagnostics_.trace_error > kTraceTolerance) {
        throw ArgumentError(fmt::format("density matrix trace deviates from 1 by {:.3g}",
                                        diagnostics_.trace_error));
    }
    if (diagnostics_.min_eigenvalue < -positivity_tolerance) {
        throw ArgumentError(fmt::format("density matrix has eigenvalue {:.3g}",
                                        diagnostics_.min_eigenvalue));
    }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
    return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::clamped(double tolerance) const {
    if (diagnostics_.min_eigenvalue >= 0.0) {
        return *this;
    }
    const ComplexMatrix herm = 0.5 * (matrix_ + matrix_.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm);
    Eigen::VectorXd w = es.eigenvalues();
    for (auto& x : w) {
        if (x < 0.0 && x >= -tolerance) {
            x = 0.0;
        }
    }
    ComplexMatrix m = es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    m /= m.trace();
    return DensityMatrix(std::move(m), tolerance);
}

SteadyState steady_state(const Liouvillian& liouvillian) {
    if (!liouvillian.dissipative()) {
        throw NonUniqueSteadyState("non-unique steady state: no collapse channel has a positive rate");
    }
    const int d = liouvillian.hilbert_dim();
    const Eigen::Index d2 = static_cast<Eigen::Index>(d) * d;

    ComplexMatrix system = liouvillian.matrix();
    system.row(0).setZero();
    for (int k = 0; k < d; ++k) {
        system(0, static_cast<Eigen::Index>(k) * (d + 1)) = 1.0;
    }
    ComplexVector rhs = ComplexVector::Zero(d2);
    rhs(0) = 1.0;

    const Eigen::PartialPivLU<ComplexMatrix> lu(system);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) {
        const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
        throw NumericalDegeneracy(
            fmt::format("constrained steady-state system is singular (condition estimate {:.3g})", cond),
            cond);
    }
    ComplexVector x = lu.solve(rhs);
    x += lu.solve(rhs - system * x);  // one step of iterative refinement

    ComplexMatrix rho = unvectorize(x, d);
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace().real();

    const double residual = (liouvillian.matrix() * vectorize(rho)).norm();
    return SteadyState{DensityMatrix(std::move(rho)), residual, max_abs(liouvillian.matrix()),
                       1.0 / rcond};
}

SteadyState solve_steady_state(const ModelParams& params) {
    params.validate();
    const auto ops = build_collapse_ops(params);
    return steady_state(build_liouvillian(build_hamiltonian(params), ops));
}

ConvergenceReport check_convergence(const ModelParams& params,
                                    const std::function<double(const DensityMatrix&)>& observable,
                                    double threshold) {
    ConvergenceReport r;
    ModelParams p = params;
    r.cutoff_low = p.photon_cutoff;
    r.value_low = observable(solve_steady_state(p).rho);
    p.photon_cutoff += 1;
    r.cutoff_high = p.photon_cutoff;
    r.value_high = observable(solve_steady_state(p).rho);
    r.absolute_change = std::abs(r.value_high - r.value_low);
    const double scale = std::max(std::abs(r.value_low), std::abs(r.value_high));
    r.relative_change = scale > 0.0 ? r.absolute_change / scale : 0.0;
    r.converged = r.relative_change <= threshold;
    return r;
}

}  // namespace cqed
