#include "wcc/spectral.hpp"

#include "wcc/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace wcc {

namespace {

constexpr double kOffDiagonalTolerance = 1e-14;
constexpr std::size_t kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (i != j) {
                acc += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(acc);
}

// Annihilates a(p,q) with the unitary J = Phi R Phi^dag, R a real Givens
// rotation and Phi a phase on column q; a <- J^dag a J, v <- v J.
void rotate(ComplexMatrix& a, ComplexMatrix& v, Eigen::Index p, Eigen::Index q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    const Complex phase = apq / mag;  // e^{i phi}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double zeta = (aqq - app) / (2.0 * mag);
    const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const Complex s_fwd = s * phase;             // J(p,q)
    const Complex s_back = -s * std::conj(phase); // J(q,p)

    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = c * akp + s_back * akq;
        a(k, q) = s_fwd * akp + c * akq;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk + std::conj(s_back) * aqk;
        a(q, k) = std::conj(s_fwd) * apk + c * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp + s_back * vkq;
        v(k, q) = s_fwd * vkp + c * vkq;
    }
}

} // namespace

Spectrum hermitian_eig(const ComplexMatrix& m, JacobiStats* stats) {
    ComplexMatrix a = checked_hermitian(m, "hermitian_eig input");
    const Eigen::Index n = a.rows();
    ComplexMatrix v = ComplexMatrix::Identity(n, n);

    const double threshold = kOffDiagonalTolerance * a.norm();
    JacobiStats local;
    while (off_diagonal_norm(a) > threshold && local.sweeps < kMaxSweeps) {
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) > 0.0) {
                    rotate(a, v, p, q);
                    ++local.rotations;
                }
            }
        }
        ++local.sweeps;
    }
    if (stats != nullptr) {
        *stats = local;
    }

    // Stable ascending sort keeps the sweep-order convention inside degenerate blocks.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });

    Spectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.eigenvalues(k) = a(src, src).real();
        out.eigenvectors.col(k) = v.col(src);
    }
    return out;
}

ComplexMatrix expm_unitary(const ComplexMatrix& h, double t) {
    const Spectrum spec = hermitian_eig(h);
    ComplexVector phases(spec.eigenvalues.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) {
        phases(i) = std::polar(1.0, -t * spec.eigenvalues(i));
    }
    return spec.eigenvectors * phases.asDiagonal() * spec.eigenvectors.adjoint();
}

double hermitian_norm(const ComplexMatrix& h) {
    const Spectrum spec = hermitian_eig(h);
    return std::max(std::abs(spec.eigenvalues(0)), std::abs(spec.eigenvalues(spec.eigenvalues.size() - 1)));
}

} // namespace wcc
