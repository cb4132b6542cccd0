// state.hpp: validated density matrices, thermal and weakly coherent ancilla
// states, and the exact entropic and energetic functionals (all in nats).

#pragma once

#include "wcc/matrix.hpp"
#include "wcc/spectral.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace wcc {

inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-10;

/// Hermitian, unit-trace, positive semidefinite matrix. The constructor
/// validates and symmetrizes; the spectrum is computed once and cached.
class DensityMatrix {
public:
    explicit DensityMatrix(const ComplexMatrix& m, std::vector<std::string> basis_labels = {});

    const ComplexMatrix& matrix() const { return matrix_; }
    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    const Spectrum& spectrum() const { return spectrum_; }
    const RealVector& eigenvalues() const { return spectrum_.eigenvalues; }
    double min_eigenvalue() const { return spectrum_.eigenvalues(0); }
    const std::vector<std::string>& basis_labels() const { return labels_; }

private:
    ComplexMatrix matrix_;
    Spectrum spectrum_;
    std::vector<std::string> labels_;
};

/// Weakly coherent ancilla: rho_A = rho_th(H_A, beta) + sqrt(tau) * lambda * chi.
/// chi is an operator in the same basis as H_A and must have a vanishing
/// diagonal in the eigenbasis of H_A. Validated by weakly_coherent_state().
struct AncillaSpec {
    ComplexMatrix H_A;
    double beta = 1.0;
    ComplexMatrix chi;
    double lambda = 0.0;
    double tau = 1.0;

    std::size_t dim() const { return static_cast<std::size_t>(H_A.rows()); }
    double coherence_amplitude() const;  // lambda * sqrt(tau)
};

DensityMatrix thermal_state(const ComplexMatrix& h, double beta);

// Throws DiagonalChi, NotPositive (lambda*sqrt(tau) too large for chi), NonHermitian.
DensityMatrix weakly_coherent_state(const AncillaSpec& spec);

// chi with its diagonal in the H_A eigenbasis removed; the helper random
// generators and tests use it to produce admissible perturbations.
ComplexMatrix remove_energy_diagonal(const ComplexMatrix& chi, const ComplexMatrix& h);

// -sum p ln p over a spectrum, with eigenvalues in [-1e-10, 0) clipped.
double entropy_of_spectrum(const RealVector& eigenvalues);

double von_neumann_entropy(const DensityMatrix& rho);

// S(rho || sigma); throws SupportViolation when supp(rho) is not inside supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

// rho with off-diagonals removed in the eigenbasis of h_ref.
DensityMatrix dephase(const DensityMatrix& rho, const ComplexMatrix& h_ref);

// S(rho_d) - S(rho).
double relative_entropy_of_coherence(const DensityMatrix& rho, const ComplexMatrix& h_ref);

double mutual_information(const DensityMatrix& rho_sa, std::size_t d_system, std::size_t d_ancilla);

// <H> - S / beta
double free_energy(const DensityMatrix& rho, const ComplexMatrix& h, double beta);

// Passive state: eigenvalues of rho (descending) placed on eigenvectors of h (ascending energy).
DensityMatrix passive_state(const DensityMatrix& rho, const ComplexMatrix& h);

double ergotropy_exact(const DensityMatrix& rho, const ComplexMatrix& h);

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

DensityMatrix reduce(const DensityMatrix& rho_sa, std::size_t d_system, std::size_t d_ancilla, Subsystem keep);

} // namespace wcc
