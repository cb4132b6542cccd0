// matrix.hpp: dense complex matrices, tensor products, partial traces, commutators.
//
// Joint system-ancilla spaces use the system-major index i_S * d_A + i_A
// everywhere in the library.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>

namespace wcc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTolerance = 1e-10;

// Validated construction from row-major entries; rejects NaN/Inf.
ComplexMatrix make_matrix(std::size_t rows, std::size_t cols, std::span<const Complex> row_major);
ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

void require_finite(const ComplexMatrix& m, std::string_view name);
void require_square(const ComplexMatrix& m, std::string_view name);

// Entrywise max modulus ||M||_max.
double max_abs(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double rel_tol = kHermitianTolerance);

// Gate then symmetrize: throws NonSquare / NonHermitian, returns (M + M^dag)/2.
ComplexMatrix checked_hermitian(const ComplexMatrix& m, std::string_view name);

ComplexMatrix identity(std::size_t d);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { System, Ancilla };

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t d_system, std::size_t d_ancilla, Subsystem keep);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);
// [A, [A, B]]
ComplexMatrix double_commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// Re tr(H rho)
double expectation(const ComplexMatrix& h, const ComplexMatrix& rho);

namespace pauli {

ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();      // diag(1, -1): index 0 is the excited level
ComplexMatrix sigma_plus();   // |0><1|
ComplexMatrix sigma_minus();  // |1><0|

} // namespace pauli

} // namespace wcc
