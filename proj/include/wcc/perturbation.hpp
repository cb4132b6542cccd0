// perturbation.hpp: second-order perturbative expressions for entropies,
// coherences and the post-collision ancilla, used as an independent check on
// the exact engines. Nothing here calls into the collision or Lindblad code;
// Gibbs weights, averages and dissipators are rebuilt from H, beta, chi, V.

#pragma once

#include "wcc/matrix.hpp"
#include "wcc/state.hpp"

namespace wcc {

// Populations closer than this are treated as degenerate.
inline constexpr double kDegeneracyGap = 1e-8;

/// rho0 + epsilon * sigma, with sigma Hermitian and traceless.
struct PerturbedState {
    PerturbedState(DensityMatrix rho0, ComplexMatrix sigma, double epsilon);

    DensityMatrix rho0;
    ComplexMatrix sigma;
    double epsilon;

    // sigma in the eigenbasis of rho0
    ComplexMatrix sigma_in_eigenbasis() const;
};

// S(rho0) to second order. Throws Degenerate when two populations of rho0
// are closer than kDegeneracyGap, InvalidArgument when rho0 is singular.
double entropy_series(const PerturbedState& ps);

// (eps^2/2) sum_{i!=j} |s_ij|^2 ln(p_i/p_j)/(p_i-p_j); degenerate pairs use
// the limit 1/p_i. sigma must have a vanishing diagonal in the rho0 eigenbasis.
double coherence_series(const PerturbedState& ps);

// S(rho0 + eps mu || rho0 + eps sigma) to second order.
double relative_entropy_series(const DensityMatrix& rho0, const ComplexMatrix& sigma, const ComplexMatrix& mu,
                               double epsilon);

struct AncillaPrediction {
    ComplexMatrix rho_A;  // rho_th + sqrt(tau)(lambda chi - i[G_A, rho_th]) + tau(-i lambda [G_A, chi] + D_A(rho_th))
    ComplexMatrix G_A;    // tr_S(V (rho_S (x) I))
    ComplexMatrix D_A;    // -1/2 tr_S [V, [V, rho_S (x) rho_th]]
};

AncillaPrediction ancilla_after_series(const DensityMatrix& rho_S, const AncillaSpec& spec, const ComplexMatrix& v);

enum class CoherenceMode { Exact, Series };

// C(after) - C(before) in the eigenbasis of h. Series mode expands each
// state around its own dephased populations.
double delta_coherence(const ComplexMatrix& before, const ComplexMatrix& after, const ComplexMatrix& h,
                       CoherenceMode mode);

// I = -beta dF - dC
double predicted_mutual_info(double beta, double dF, double dC);
// S(rho'_A || rho_A) = beta W_C + dC
double predicted_rel_entropy(double beta, double W_C, double dC);

struct AncillaSideWork {
    double W_C = 0.0;    // -i lambda tau <[G_A, H_A]>_chi
    double Q_inc = 0.0;  // -tau tr{H_A D_A(rho_th)}
};

// Requires [V, H_S (x) I + I (x) H_A] = 0; throws NotEnergyConserving.
AncillaSideWork coherent_work_ancilla_side(const AncillaSpec& spec, const DensityMatrix& rho_S,
                                           const ComplexMatrix& h_system, const ComplexMatrix& v);

// T times the second-order coherence of rho_th + lambda sqrt(tau) chi.
double ergotropy_series(const AncillaSpec& spec);

} // namespace wcc
