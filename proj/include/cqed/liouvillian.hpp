#pragma once

#include "cqed/model.hpp"
#include "cqed/operators.hpp"

#include <functional>
#include <span>

namespace cqed {

/// Liouvillian superoperator acting on column-stacked density matrices:
/// vec(ρ)[i + j·d] = ρ(i, j).
class Liouvillian {
public:
    Liouvillian(ComplexMatrix matrix, int hilbert_dim, bool dissipative);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    int hilbert_dim() const noexcept { return hilbert_dim_; }
    /// True when at least one collapse channel has a positive rate.
    bool dissipative() const noexcept { return dissipative_; }

    /// unvec(L · vec(rho))
    ComplexMatrix apply(const ComplexMatrix& rho) const;

private:
    ComplexMatrix matrix_;
    int hilbert_dim_;
    bool dissipative_;
};

ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix unvectorize(const ComplexVector& v, int dim);

/// Builds L with L·vec(ρ) = vec(−i[H,ρ] + Σ rate/2 (2dρd† − d†dρ − ρd†d)).
Liouvillian build_liouvillian(const ComplexMatrix& hamiltonian,
                              std::span<const CollapseOperator> collapse_ops);

/// Right-hand side of the master equation evaluated directly on ρ.
ComplexMatrix master_equation_rhs(const ComplexMatrix& hamiltonian,
                                  std::span<const CollapseOperator> collapse_ops,
                                  const ComplexMatrix& rho);

struct StateDiagnostics {
    double hermiticity_error = 0.0;  ///< max |ρ − ρ†|
    double trace_error = 0.0;        ///< |tr ρ − 1|
    double min_eigenvalue = 0.0;
};

StateDiagnostics diagnose(const ComplexMatrix& rho);

/// Hermitian, unit-trace, positive semidefinite matrix. Construction checks
/// the invariants and throws ArgumentError when they fail.
class DensityMatrix {
public:
    static constexpr double kHermiticityTolerance = 1e-10;
    static constexpr double kTraceTolerance = 1e-10;
    static constexpr double kPositivityTolerance = 1e-8;

    explicit DensityMatrix(ComplexMatrix matrix, double positivity_tolerance = kPositivityTolerance);

    /// Pure state |ψ><ψ| of a normalized vector.
    static DensityMatrix pure(const ComplexVector& psi);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
    const StateDiagnostics& diagnostics() const noexcept { return diagnostics_; }

    /// Copy with eigenvalues in [−tolerance, 0) set to zero.
    DensityMatrix clamped(double tolerance = kPositivityTolerance) const;

private:
    ComplexMatrix matrix_;
    StateDiagnostics diagnostics_;
};

struct SteadyState {
    DensityMatrix rho;
    double residual = 0.0;            ///< ‖L·vec(ρ)‖₂
    double liouvillian_max = 0.0;     ///< ‖L‖_max
    double condition_estimate = 0.0;  ///< 1/rcond of the constrained system
};

/// Trace-constrained direct solve: row 0 of L is replaced by the trace
/// functional with right-hand side 1.
///
/// Throws NonUniqueSteadyState when L has no dissipation and
/// NumericalDegeneracy when the constrained system is singular.
SteadyState steady_state(const Liouvillian& liouvillian);

/// Hamiltonian + collapse operators + steady_state in one call.
SteadyState solve_steady_state(const ModelParams& params);

struct ConvergenceReport {
    int cutoff_low = 0;
    int cutoff_high = 0;
    double value_low = 0.0;
    double value_high = 0.0;
    double absolute_change = 0.0;
    double relative_change = 0.0;
    bool converged = true;
};

/// Evaluates an observable of the steady state at params.photon_cutoff and
/// one above; flags non-convergence when the relative change exceeds
/// `threshold`.
ConvergenceReport check_convergence(const ModelParams& params,
                                    const std::function<double(const DensityMatrix&)>& observable,
                                    double threshold = 1e-3);

}  // namespace cqed
