#include "wcc/matrix.hpp"

#include "wcc/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace wcc {

ComplexMatrix make_matrix(std::size_t rows, std::size_t cols, std::span<const Complex> row_major) {
    if (rows == 0 || cols == 0) {
        throw Error(ErrorKind::InvalidArgument, "matrix dimensions must be positive");
    }
    if (row_major.size() != rows * cols) {
        throw Error(ErrorKind::DimensionMismatch,
                    "expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(row_major.size()));
    }
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row_major[r * cols + c];
        }
    }
    require_finite(m, "matrix");
    return m;
}

ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t n_rows = rows.size();
    const std::size_t n_cols = n_rows == 0 ? 0 : rows.begin()->size();
    std::vector<Complex> flat;
    flat.reserve(n_rows * n_cols);
    for (const auto& row : rows) {
        if (row.size() != n_cols) {
            throw Error(ErrorKind::DimensionMismatch, "ragged row in matrix literal");
        }
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return make_matrix(n_rows, n_cols, flat);
}

void require_finite(const ComplexMatrix& m, std::string_view name) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw Error(ErrorKind::NonFinite, std::string(name) + " has a non-finite entry");
        }
    }
}

void require_square(const ComplexMatrix& m, std::string_view name) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorKind::NonSquare, std::string(name) + " is " + std::to_string(m.rows()) + "x" +
                                              std::to_string(m.cols()));
    }
}

double max_abs(const ComplexMatrix& m) {
    double out = 0.0;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        out = std::max(out, std::abs(m.data()[i]));
    }
    return out;
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    const ComplexMatrix diff = m - m.adjoint();
    return max_abs(diff) <= rel_tol * max_abs(m);
}

ComplexMatrix checked_hermitian(const ComplexMatrix& m, std::string_view name) {
    require_square(m, name);
    require_finite(m, name);
    if (!is_hermitian(m)) {
        throw Error(ErrorKind::NonHermitian, std::string(name) + " is not Hermitian within tolerance");
    }
    return (m + m.adjoint()) * 0.5;
}

ComplexMatrix identity(std::size_t d) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t d_system, std::size_t d_ancilla, Subsystem keep) {
    const auto ds = static_cast<Eigen::Index>(d_system);
    const auto da = static_cast<Eigen::Index>(d_ancilla);
    if (d_system == 0 || d_ancilla == 0 || m.rows() != ds * da || m.cols() != ds * da) {
        throw Error(ErrorKind::DimensionMismatch, "partial_trace: matrix is " + std::to_string(m.rows()) + "x" +
                                                      std::to_string(m.cols()) + ", expected " +
                                                      std::to_string(ds * da) + " square");
    }
    if (keep == Subsystem::System) {
        ComplexMatrix out = ComplexMatrix::Zero(ds, ds);
        for (Eigen::Index i = 0; i < ds; ++i) {
            for (Eigen::Index j = 0; j < ds; ++j) {
                Complex acc{0.0, 0.0};
                for (Eigen::Index a = 0; a < da; ++a) {
                    acc += m(i * da + a, j * da + a);
                }
                out(i, j) = acc;
            }
        }
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Eigen::Index a = 0; a < da; ++a) {
        for (Eigen::Index b = 0; b < da; ++b) {
            Complex acc{0.0, 0.0};
            for (Eigen::Index i = 0; i < ds; ++i) {
                acc += m(i * da + a, i * da + b);
            }
            out(a, b) = acc;
        }
    }
    return out;
}

namespace {

void require_conformable(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "commutator operands must be square of equal size");
    }
}

} // namespace

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_conformable(a, b);
    return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_conformable(a, b);
    return a * b + b * a;
}

ComplexMatrix double_commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return commutator(a, commutator(a, b));
}

double expectation(const ComplexMatrix& h, const ComplexMatrix& rho) {
    if (h.rows() != rho.cols() || h.cols() != rho.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "expectation: operator and state sizes differ");
    }
    // tr(H rho) without forming the product.
    Complex acc{0.0, 0.0};
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        for (Eigen::Index k = 0; k < h.cols(); ++k) {
            acc += h(i, k) * rho(k, i);
        }
    }
    return acc.real();
}

namespace pauli {

ComplexMatrix sigma_x() { return from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
ComplexMatrix sigma_y() { return from_rows({{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}); }
ComplexMatrix sigma_z() { return from_rows({{1.0, 0.0}, {0.0, -1.0}}); }
ComplexMatrix sigma_plus() { return from_rows({{0.0, 1.0}, {0.0, 0.0}}); }
ComplexMatrix sigma_minus() { return from_rows({{0.0, 0.0}, {1.0, 0.0}}); }

} // namespace pauli

} // namespace wcc
