#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>

namespace cqed {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kDefaultMatrixTolerance = 1e-12;

/// Entrywise comparison with an absolute tolerance. Matrices of different
/// shape are never equal.
bool approx_equal(const ComplexMatrix& lhs, const ComplexMatrix& rhs,
                  double tolerance = kDefaultMatrixTolerance);

/// max_ij |m_ij|
double max_abs(const ComplexMatrix& m);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product lhs ⊗ rhs.
ComplexMatrix kron(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

/// Atomic level encoding used in basis labels.
enum class Level : int { Ground = 0, Excited = 1 };

/// Composite space cavity ⊗ atom1 ⊗ atom2 with the Fock space truncated at
/// `photon_cutoff` photons. The basis state |n, i1, i2> sits at index
/// n*4 + i1*2 + i2.
class HilbertLayout {
public:
    explicit HilbertLayout(int photon_cutoff);

    int photon_cutoff() const noexcept { return photon_cutoff_; }
    int cavity_dim() const noexcept { return photon_cutoff_ + 1; }
    static constexpr int atom_dim() noexcept { return 2; }
    int dim() const noexcept { return 4 * cavity_dim(); }

    int index(int photons, Level atom1, Level atom2) const;

    struct Label {
        int photons;
        Level atom1;
        Level atom2;
        bool operator==(const Label&) const = default;
    };
    Label label(int index) const;

    /// Unit vector for |n, i1, i2>.
    ComplexVector basis_state(int photons, Level atom1, Level atom2) const;

    bool operator==(const HilbertLayout&) const = default;

private:
    int photon_cutoff_;
};

// Single-factor operators.
ComplexMatrix cavity_annihilation(int photon_cutoff);
ComplexMatrix atom_lowering();  // |g><e| in the {g, e} basis

/// Kronecker product over the factors in the order cavity ⊗ atom1 ⊗ atom2;
/// each factor must match the corresponding layout dimension.
ComplexMatrix tensor_embed(const HilbertLayout& layout, std::span<const ComplexMatrix> factors);
ComplexMatrix tensor_embed(const HilbertLayout& layout, const ComplexMatrix& cavity,
                           const ComplexMatrix& atom1, const ComplexMatrix& atom2);

// Composite-space operators.
ComplexMatrix identity(const HilbertLayout& layout);
ComplexMatrix annihilation(const HilbertLayout& layout);
ComplexMatrix creation(const HilbertLayout& layout);
ComplexMatrix number(const HilbertLayout& layout);
/// atom_index is 1 or 2; anything else throws ArgumentError.
ComplexMatrix sigma_minus(const HilbertLayout& layout, int atom_index);
ComplexMatrix sigma_plus(const HilbertLayout& layout, int atom_index);
/// a†a + Σ σᵢ⁺σᵢ⁻
ComplexMatrix excitation_number(const HilbertLayout& layout);
/// Permutation exchanging the two atom labels.
ComplexMatrix atom_swap(const HilbertLayout& layout);

}  // namespace cqed
