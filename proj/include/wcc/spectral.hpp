#pragma once

#include "wcc/matrix.hpp"

#include <cstddef>

namespace wcc {

/// Eigendecomposition of a Hermitian matrix: ascending eigenvalues and the
/// unitary whose columns are the matching eigenvectors.
struct Spectrum {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;

    std::size_t dim() const { return static_cast<std::size_t>(eigenvalues.size()); }

    /// V diag(f(lambda)) V^dag for a scalar function f on the spectrum.
    template <typename F>
    ComplexMatrix apply(F&& f) const {
        ComplexVector values(eigenvalues.size());
        for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
            values(i) = Complex(f(eigenvalues(i)));
        }
        return eigenvectors * values.asDiagonal() * eigenvectors.adjoint();
    }

    ComplexMatrix reconstruct() const {
        return apply([](double x) { return x; });
    }
};

struct JacobiStats {
    std::size_t sweeps = 0;
    std::size_t rotations = 0;
};

/// Cyclic Jacobi diagonalisation. Sweeps visit the upper triangle in
/// row-major order and stop once the off-diagonal Frobenius norm drops to
/// 1e-14 * ||M||_F. Throws NonSquare / NonHermitian.
Spectrum hermitian_eig(const ComplexMatrix& m, JacobiStats* stats = nullptr);

/// exp(-i t H) built from the spectrum of H.
ComplexMatrix expm_unitary(const ComplexMatrix& h, double t);

/// Largest |eigenvalue| of a Hermitian matrix.
double hermitian_norm(const ComplexMatrix& h);

} // namespace wcc
