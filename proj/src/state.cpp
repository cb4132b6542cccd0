#include "wcc/state.hpp"

#include "wcc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace wcc {

namespace {

constexpr double kSupportEigenvalue = 1e-12;
constexpr double kSupportLeakage = 1e-9;
constexpr double kChiDiagonalTolerance = 1e-12;

} // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix& m, std::vector<std::string> basis_labels)
    : matrix_(checked_hermitian(m, "density matrix")), labels_(std::move(basis_labels)) {
    if (!labels_.empty() && labels_.size() != dim()) {
        throw Error(ErrorKind::DimensionMismatch, "basis_labels size does not match density matrix dimension");
    }
    const double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        throw Error(ErrorKind::InvalidArgument, "density matrix trace is " + std::to_string(tr));
    }
    spectrum_ = hermitian_eig(matrix_);
    if (spectrum_.eigenvalues(0) < -kPositivityTolerance) {
        throw Error(ErrorKind::NotPositive,
                    "density matrix has eigenvalue " + std::to_string(spectrum_.eigenvalues(0)));
    }
}

double AncillaSpec::coherence_amplitude() const { return lambda * std::sqrt(tau); }

DensityMatrix thermal_state(const ComplexMatrix& h, double beta) {
    if (!std::isfinite(beta) || beta < 0.0) {
        throw Error(ErrorKind::InvalidArgument, "thermal_state requires finite beta >= 0");
    }
    const Spectrum spec = hermitian_eig(h);
    const double e_min = spec.eigenvalues(0);
    double z = 0.0;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        z += std::exp(-beta * (spec.eigenvalues(i) - e_min));
    }
    ComplexMatrix rho = spec.apply([&](double e) { return std::exp(-beta * (e - e_min)) / z; });
    return DensityMatrix(rho);
}

ComplexMatrix remove_energy_diagonal(const ComplexMatrix& chi, const ComplexMatrix& h) {
    const Spectrum spec = hermitian_eig(h);
    ComplexMatrix in_basis = spec.eigenvectors.adjoint() * chi * spec.eigenvectors;
    in_basis.diagonal().setZero();
    return spec.eigenvectors * in_basis * spec.eigenvectors.adjoint();
}

DensityMatrix weakly_coherent_state(const AncillaSpec& spec) {
    const ComplexMatrix h = checked_hermitian(spec.H_A, "H_A");
    if (!(spec.tau > 0.0) || !std::isfinite(spec.tau)) {
        throw Error(ErrorKind::InvalidArgument, "ancilla tau must be positive");
    }
    if (!std::isfinite(spec.lambda)) {
        throw Error(ErrorKind::InvalidArgument, "ancilla lambda must be finite");
    }
    if (spec.chi.rows() != h.rows() || spec.chi.cols() != h.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "chi and H_A sizes differ");
    }
    const ComplexMatrix chi = checked_hermitian(spec.chi, "chi");
    const Spectrum energy = hermitian_eig(h);
    const ComplexMatrix chi_energy = energy.eigenvectors.adjoint() * chi * energy.eigenvectors;
    for (Eigen::Index i = 0; i < chi_energy.rows(); ++i) {
        if (std::abs(chi_energy(i, i)) > kChiDiagonalTolerance) {
            throw Error(ErrorKind::DiagonalChi, "chi has diagonal element " + std::to_string(std::abs(chi_energy(i, i))) +
                                                    " in the H_A eigenbasis");
        }
    }
    const DensityMatrix th = thermal_state(h, spec.beta);
    const ComplexMatrix rho = th.matrix() + spec.coherence_amplitude() * chi;
    const Spectrum s = hermitian_eig(rho);
    if (s.eigenvalues(0) < -kPositivityTolerance) {
        throw Error(ErrorKind::NotPositive, "ancilla state has eigenvalue " + std::to_string(s.eigenvalues(0)) +
                                                "; lambda*sqrt(tau) too large for this chi");
    }
    return DensityMatrix(rho);
}

double entropy_of_spectrum(const RealVector& eigenvalues) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        const double p = eigenvalues(i);
        if (p < -kPositivityTolerance) {
            throw Error(ErrorKind::NotPositive, "negative eigenvalue " + std::to_string(p) + " in entropy");
        }
        if (p > 0.0) {
            s -= p * std::log(p);
        }
    }
    return s;
}

double von_neumann_entropy(const DensityMatrix& rho) { return entropy_of_spectrum(rho.eigenvalues()); }

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "relative_entropy: dimension mismatch");
    }
    const Spectrum& r = rho.spectrum();
    const Spectrum& q = sigma.spectrum();
    const Eigen::Index n = r.eigenvalues.size();
    // overlap(i, j) = |<r_i|q_j>|^2
    const ComplexMatrix inner = r.eigenvectors.adjoint() * q.eigenvectors;

    double value = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double p = r.eigenvalues(i);
        if (p <= kSupportEigenvalue) {
            continue;
        }
        double leak = 0.0;
        double cross = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double w = std::norm(inner(i, j));
            if (q.eigenvalues(j) > kSupportEigenvalue) {
                cross += w * std::log(q.eigenvalues(j));
            } else {
                leak += w;
            }
        }
        if (leak > kSupportLeakage) {
            throw Error(ErrorKind::SupportViolation,
                        "support of rho is not contained in support of sigma (leakage " + std::to_string(leak) + ")");
        }
        value += p * std::log(p) - p * cross;
    }
    return value;
}

DensityMatrix dephase(const DensityMatrix& rho, const ComplexMatrix& h_ref) {
    if (static_cast<std::size_t>(h_ref.rows()) != rho.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "dephase: reference Hamiltonian size differs");
    }
    const Spectrum basis = hermitian_eig(h_ref);
    ComplexMatrix in_basis = basis.eigenvectors.adjoint() * rho.matrix() * basis.eigenvectors;
    const ComplexVector diag = in_basis.diagonal();
    in_basis.setZero();
    in_basis.diagonal() = diag;
    return DensityMatrix(basis.eigenvectors * in_basis * basis.eigenvectors.adjoint());
}

double relative_entropy_of_coherence(const DensityMatrix& rho, const ComplexMatrix& h_ref) {
    if (static_cast<std::size_t>(h_ref.rows()) != rho.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "coherence: reference Hamiltonian size differs");
    }
    const Spectrum basis = hermitian_eig(h_ref);
    const ComplexMatrix in_basis = basis.eigenvectors.adjoint() * rho.matrix() * basis.eigenvectors;
    RealVector populations(in_basis.rows());
    for (Eigen::Index i = 0; i < in_basis.rows(); ++i) {
        populations(i) = in_basis(i, i).real();
    }
    return entropy_of_spectrum(populations) - von_neumann_entropy(rho);
}

DensityMatrix reduce(const DensityMatrix& rho_sa, std::size_t d_system, std::size_t d_ancilla, Subsystem keep) {
    return DensityMatrix(partial_trace(rho_sa.matrix(), d_system, d_ancilla, keep));
}

double mutual_information(const DensityMatrix& rho_sa, std::size_t d_system, std::size_t d_ancilla) {
    const DensityMatrix rs = reduce(rho_sa, d_system, d_ancilla, Subsystem::System);
    const DensityMatrix ra = reduce(rho_sa, d_system, d_ancilla, Subsystem::Ancilla);
    return von_neumann_entropy(rs) + von_neumann_entropy(ra) - von_neumann_entropy(rho_sa);
}

double free_energy(const DensityMatrix& rho, const ComplexMatrix& h, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw Error(ErrorKind::InvalidArgument, "free_energy requires finite beta > 0");
    }
    return expectation(h, rho.matrix()) - von_neumann_entropy(rho) / beta;
}

DensityMatrix passive_state(const DensityMatrix& rho, const ComplexMatrix& h) {
    if (static_cast<std::size_t>(h.rows()) != rho.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "passive_state: Hamiltonian size differs");
    }
    const Spectrum energy = hermitian_eig(h);
    const RealVector& p = rho.eigenvalues();  // ascending
    const Eigen::Index n = p.size();
    ComplexVector weights(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        weights(k) = p(n - 1 - k);  // largest population on the lowest energy
    }
    return DensityMatrix(energy.eigenvectors * weights.asDiagonal() * energy.eigenvectors.adjoint());
}

double ergotropy_exact(const DensityMatrix& rho, const ComplexMatrix& h) {
    const ComplexMatrix hh = checked_hermitian(h, "ergotropy Hamiltonian");
    const DensityMatrix passive = passive_state(rho, hh);
    return expectation(hh, rho.matrix()) - expectation(hh, passive.matrix());
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    const ComplexMatrix diff = a - b;
    if (max_abs(diff) == 0.0) {
        return 0.0;
    }
    const Spectrum s = hermitian_eig((diff + diff.adjoint()) * 0.5);
    return 0.5 * s.eigenvalues.cwiseAbs().sum();
}

} // namespace wcc
