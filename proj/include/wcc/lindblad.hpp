// lindblad.hpp: continuous-time limit of the collisional dynamics.
//
// Generator: L(rho) = -i[H_S + sum_j lambda_j G_j, rho] + sum_j D_j(rho) with
//   D_j(rho) = -1/2 tr_A [V_j, [V_j, rho (x) rho_th,j]]   and   G_j = tr_A(V_j chi_j).
// Superoperators are dense d^2 x d^2 matrices acting on column-stacked
// density matrices, vec(X)[i + j d] = X(i, j).

#pragma once

#include "wcc/matrix.hpp"
#include "wcc/parallel.hpp"
#include "wcc/state.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace wcc {

using Superoperator = ComplexMatrix;

ComplexVector vec(const ComplexMatrix& x);
ComplexMatrix unvec(const ComplexVector& v, std::size_t d);

using LinearMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

// Column k is vec(map(E_k)) for the k-th column-stacked matrix unit.
Superoperator assemble_superoperator(std::size_t d, const LinearMap& map, Execution exec = Execution::Serial);

Superoperator hamiltonian_superoperator(const ComplexMatrix& h);

// D[L] rho = L rho L^dag - 1/2 {L^dag L, rho}
Superoperator lindblad_dissipator(const ComplexMatrix& jump);

// tr_A(V (I (x) op)): the first moment for op = rho_th, and G for op = chi.
ComplexMatrix ancilla_average(const ComplexMatrix& v, const ComplexMatrix& op, std::size_t d_system);

// tr_S(V (op (x) I)): G_A for op = rho_S.
ComplexMatrix system_average(const ComplexMatrix& v, const ComplexMatrix& op, std::size_t d_ancilla);

// -1/2 tr_A [V, [V, x (x) rho_th]]
ComplexMatrix apply_thermal_dissipator(const ComplexMatrix& v, const ComplexMatrix& rho_th, const ComplexMatrix& x);

Superoperator thermal_dissipator(const ComplexMatrix& v, const ComplexMatrix& rho_th, std::size_t d_system,
                                 Execution exec = Execution::Serial);

struct SpeciesTerm {
    std::string label;
    double beta = 0.0;
    double lambda = 0.0;
    ComplexMatrix G;
    Superoperator dissipator;
};

class LindbladGenerator {
public:
    LindbladGenerator(ComplexMatrix h_system, std::vector<SpeciesTerm> species);

    std::size_t dim() const { return static_cast<std::size_t>(h_system_.rows()); }
    const ComplexMatrix& h_system() const { return h_system_; }
    const ComplexMatrix& h_eff() const { return h_eff_; }
    const Superoperator& dissipator() const { return dissipator_; }
    const Superoperator& superoperator() const { return full_; }
    const std::vector<SpeciesTerm>& species() const { return species_; }

    ComplexMatrix apply(const ComplexMatrix& rho) const;
    ComplexMatrix apply_dissipator(std::size_t species, const ComplexMatrix& rho) const;

private:
    ComplexMatrix h_system_;
    ComplexMatrix h_eff_;
    Superoperator dissipator_;
    Superoperator full_;
    std::vector<SpeciesTerm> species_;
};

// Throws NonVanishingFirstMoment when tr_A(V (I (x) rho_th)) exceeds 1e-9.
LindbladGenerator build_generator(const ComplexMatrix& h_system, const AncillaSpec& spec, const ComplexMatrix& v,
                                  std::string label = "A", Execution exec = Execution::Serial);

struct BathInput {
    AncillaSpec spec;
    ComplexMatrix V;
    std::string label;
};

LindbladGenerator multi_bath_generator(const ComplexMatrix& h_system, const std::vector<BathInput>& baths,
                                       Execution exec = Execution::Serial);

/// System and ancilla eigenoperators sharing a Bohr frequency:
/// [H_S, L] = -omega L and [H_A, A] = -omega A; the coupling adds
/// g L^dag (x) A + h.c. to the interaction.
struct EigenoperatorCoupling {
    ComplexMatrix L;
    ComplexMatrix A;
    double omega = 0.0;
    Complex g{1.0, 0.0};
};

// Validates both eigenoperator conditions; throws NotEigenoperator.
EigenoperatorCoupling make_coupling(const ComplexMatrix& h_system, const ComplexMatrix& h_ancilla, ComplexMatrix l,
                                    ComplexMatrix a, double omega, Complex g);

ComplexMatrix eigenoperator_interaction(const std::vector<EigenoperatorCoupling>& couplings);

// G = sum_k g_k <A_k>_chi L_k^dag + g_k^* <A_k^dag>_chi L_k
ComplexMatrix eigenoperator_coherent_term(const std::vector<EigenoperatorCoupling>& couplings,
                                          const ComplexMatrix& chi);

struct EigenoperatorDissipator {
    std::vector<double> gamma_minus;  // |g|^2 <A A^dag>_th
    std::vector<double> gamma_plus;   // |g|^2 <A^dag A>_th
    Superoperator dissipator;
};

EigenoperatorDissipator eigenoperator_dissipator(const std::vector<EigenoperatorCoupling>& couplings,
                                                 const ComplexMatrix& h_ancilla, double beta);

// sqrt of the largest eigenvalue of L^dag L after 20 power-iteration steps.
double superoperator_norm_estimate(const Superoperator& l);

ComplexVector rk4_step(const Superoperator& l, const ComplexVector& x, double h);

struct IntegrationOptions {
    std::size_t record_every = 1;
    double trace_drift_tolerance = 1e-8;
    double positivity_tolerance = 1e-6;
};

// States are stored as raw matrices: an RK4 state may carry eigenvalues in
// [-positivity_tolerance, 0), which DensityMatrix would reject.
struct Trajectory {
    std::vector<double> times;
    std::vector<ComplexMatrix> states;
};

// Fixed-step RK4 over [0, t_final]; the step is t_final / ceil(t_final / dt).
// Throws StepTooLarge, TraceDrift, PositivityLost.
Trajectory integrate(const LindbladGenerator& gen, const DensityMatrix& rho0, double t_final, double dt,
                     const IntegrationOptions& options = {});

// Unique solution of L(rho) = 0, tr rho = 1. Throws DegenerateSteadyState, NotPositive.
DensityMatrix steady_state(const LindbladGenerator& gen);

struct RateLedger {
    double dE_dt = 0.0;
    std::vector<double> W_C_rate;   // i lambda_j <[G_j, H_S]>
    std::vector<double> Q_inc_rate; // tr{H_S D_j(rho)}
    double S_rate = 0.0;            // -tr{L(rho) ln rho}
    double Pi = 0.0;                // S_rate - sum_j beta_j Q_inc_j

    double W_C_total() const;
    double Q_inc_total() const;
};

// Throws RankDeficient when rho has an eigenvalue below 1e-13.
RateLedger rates(const LindbladGenerator& gen, const DensityMatrix& rho);

} // namespace wcc
