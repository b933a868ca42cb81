#include "cqed/operators.hpp"

#include "cqed/error.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <array>
#include <cmath>
#include <string>

namespace cqed {

bool approx_equal(const ComplexMatrix& lhs, const ComplexMatrix& rhs, double tolerance) {
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
        return false;
    }
    return lhs.size() == 0 || max_abs(lhs - rhs) <= tolerance;
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

ComplexMatrix kron(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    return Eigen::kroneckerProduct(lhs, rhs).eval();
}

HilbertLayout::HilbertLayout(int photon_cutoff) : photon_cutoff_(photon_cutoff) {
    if (photon_cutoff < 0) {
        throw ArgumentError("photon cutoff must be non-negative, got " + std::to_string(photon_cutoff));
    }
}

int HilbertLayout::index(int photons, Level atom1, Level atom2) const {
    if (photons < 0 || photons > photon_cutoff_) {
        throw ArgumentError("photon number " + std::to_string(photons) + " outside [0, " +
                            std::to_string(photon_cutoff_) + "]");
    }
    return photons * 4 + static_cast<int>(atom1) * 2 + static_cast<int>(atom2);
}

HilbertLayout::Label HilbertLayout::label(int index) const {
    if (index < 0 || index >= dim()) {
        throw ArgumentError("basis index " + std::to_string(index) + " outside layout");
    }
    return {index / 4, static_cast<Level>((index / 2) % 2), static_cast<Level>(index % 2)};
}

ComplexVector HilbertLayout::basis_state(int photons, Level atom1, Level atom2) const {
    ComplexVector v = ComplexVector::Zero(dim());
    v(index(photons, atom1, atom2)) = 1.0;
    return v;
}

ComplexMatrix cavity_annihilation(int photon_cutoff) {
    if (photon_cutoff < 0) {
        throw ArgumentError("photon cutoff must be non-negative");
    }
    const int d = photon_cutoff + 1;
    ComplexMatrix a = ComplexMatrix::Zero(d, d);
    for (int n = 1; n < d; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

ComplexMatrix atom_lowering() {
    ComplexMatrix s = ComplexMatrix::Zero(2, 2);
    s(0, 1) = 1.0;
    return s;
}

ComplexMatrix tensor_embed(const HilbertLayout& layout, std::span<const ComplexMatrix> factors) {
    const std::array<int, 3> dims{layout.cavity_dim(), HilbertLayout::atom_dim(),
                                  HilbertLayout::atom_dim()};
    if (factors.size() != dims.size()) {
        throw ArgumentError("tensor_embed expects 3 factors, got " + std::to_string(factors.size()));
    }
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (factors[k].rows() != dims[k] || factors[k].cols() != dims[k]) {
            throw ArgumentError("factor " + std::to_string(k) + " has shape " +
                                std::to_string(factors[k].rows()) + "x" +
                                std::to_string(factors[k].cols()) + ", expected " +
                                std::to_string(dims[k]) + "x" + std::to_string(dims[k]));
        }
    }
    return kron(factors[0], kron(factors[1], factors[2]));
}

ComplexMatrix tensor_embed(const HilbertLayout& layout, const ComplexMatrix& cavity,
                           const ComplexMatrix& atom1, const ComplexMatrix& atom2) {
    const std::array<ComplexMatrix, 3> factors{cavity, atom1, atom2};
    return tensor_embed(layout, factors);
}

namespace {

ComplexMatrix id(int d) { return ComplexMatrix::Identity(d, d); }

}  // namespace

ComplexMatrix identity(const HilbertLayout& layout) { return id(layout.dim()); }

ComplexMatrix annihilation(const HilbertLayout& layout) {
    return tensor_embed(layout, cavity_annihilation(layout.photon_cutoff()), id(2), id(2));
}

ComplexMatrix creation(const HilbertLayout& layout) { return annihilation(layout).adjoint(); }

ComplexMatrix number(const HilbertLayout& layout) {
    const ComplexMatrix a = annihilation(layout);
    return a.adjoint() * a;
}

ComplexMatrix sigma_minus(const HilbertLayout& layout, int atom_index) {
    const ComplexMatrix cav = id(layout.cavity_dim());
    switch (atom_index) {
        case 1:
            return tensor_embed(layout, cav, atom_lowering(), id(2));
        case 2:
            return tensor_embed(layout, cav, id(2), atom_lowering());
        default:
            throw ArgumentError("atom index must be 1 or 2, got " + std::to_string(atom_index));
    }
}

ComplexMatrix sigma_plus(const HilbertLayout& layout, int atom_index) {
    return sigma_minus(layout, atom_index).adjoint();
}

ComplexMatrix excitation_number(const HilbertLayout& layout) {
    ComplexMatrix n = number(layout);
    for (int i : {1, 2}) {
        const ComplexMatrix s = sigma_minus(layout, i);
        n += s.adjoint() * s;
    }
    return n;
}

ComplexMatrix atom_swap(const HilbertLayout& layout) {
    ComplexMatrix p = ComplexMatrix::Zero(layout.dim(), layout.dim());
    for (int k = 0; k < layout.dim(); ++k) {
        const auto l = layout.label(k);
        p(layout.index(l.photons, l.atom2, l.atom1), k) = 1.0;
    }
    return p;
}

}  // namespace cqed
