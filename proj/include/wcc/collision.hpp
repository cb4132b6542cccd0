// collision.hpp: stroboscopic collisional dynamics and the exact
// per-collision thermodynamic ledger.
//
// One collision: rho'_SA = U (rho_S (x) rho_A) U^dag with
//   U = exp(-i tau (H_S + H_A + V / sqrt(tau))).
// Sign convention: Q_A > 0 means the ancilla gains energy, W = dE + Q_A.

#pragma once

#include "wcc/lindblad.hpp"
#include "wcc/matrix.hpp"
#include "wcc/state.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace wcc {

class CollisionConfig {
public:
    // Rejects non-Hermitian H_S or V, mismatched dimensions, beta outside
    // (0, inf), tau <= 0, and ancilla specs whose rho_A is not a state.
    CollisionConfig(ComplexMatrix h_system, ComplexMatrix v, AncillaSpec ancilla, std::string label = "A");

    const ComplexMatrix& h_system() const { return h_system_; }
    const ComplexMatrix& v() const { return v_; }
    const AncillaSpec& ancilla() const { return ancilla_; }
    const std::string& label() const { return label_; }
    std::size_t d_system() const { return static_cast<std::size_t>(h_system_.rows()); }
    std::size_t d_ancilla() const { return ancilla_.dim(); }
    double tau() const { return ancilla_.tau; }
    double beta() const { return ancilla_.beta; }
    double lambda() const { return ancilla_.lambda; }

    const ComplexMatrix& h_free() const { return h_free_; }  // H_S (x) I + I (x) H_A
    const DensityMatrix& rho_thermal() const { return rho_th_; }
    const DensityMatrix& rho_ancilla() const { return rho_a_; }
    const ComplexMatrix& G() const { return g_; }
    const Superoperator& dissipator() const { return dissipator_; }

    bool strict_energy_conserving() const { return strict_; }
    double energy_scale() const { return energy_scale_; }  // ||H_S|| + ||H_A||

private:
    ComplexMatrix h_system_;
    ComplexMatrix v_;
    AncillaSpec ancilla_;
    std::string label_;
    ComplexMatrix h_free_;
    DensityMatrix rho_th_;
    DensityMatrix rho_a_;
    ComplexMatrix g_;
    Superoperator dissipator_;
    bool strict_ = false;
    double energy_scale_ = 0.0;
};

struct CollisionLedger {
    double dE = 0.0;
    double Q_A = 0.0;
    double W = 0.0;
    double W_C = 0.0;
    double Q_inc = 0.0;
    double Sigma = 0.0;
    double mutual_info = 0.0;
    double rel_entropy_ancilla = 0.0;
    double C_before = 0.0;
    double C_after = 0.0;
    double dF = 0.0;

    CollisionLedger& operator+=(const CollisionLedger& other);
};

// Sub-collision of a round with `species_count` species: duration tau/m and
// potential m V / sqrt(tau), i.e. U = exp(-i (tau/m) H_free - i sqrt(tau) V).
ComplexMatrix build_unitary(const CollisionConfig& cfg, std::size_t species_count = 1);

struct CollisionResult {
    DensityMatrix rho_S;
    DensityMatrix rho_A;
    DensityMatrix rho_SA;
    CollisionLedger ledger;
};

// W_C and Q_inc are tau times the continuum rates at the pre-collision rho_S.
CollisionResult collide(const DensityMatrix& rho_S, const CollisionConfig& cfg, std::size_t species_count = 1);

enum class Schedule { SingleSpecies, RoundRobin };

struct TrajectoryStep {
    std::size_t step = 0;
    double t = 0.0;
    DensityMatrix rho_S;
    CollisionLedger ledger;                   // summed over the round
    std::vector<CollisionLedger> per_species;
    CollisionLedger cumulative;
    std::vector<CollisionLedger> cumulative_per_species;
};

struct TrajectoryRecord {
    DensityMatrix initial;
    std::vector<std::string> labels;
    std::vector<TrajectoryStep> steps;

    const DensityMatrix& final_state() const { return steps.empty() ? initial : steps.back().rho_S; }
};

// One step is one full round: every species collides once, in config order.
TrajectoryRecord run_trajectory(const DensityMatrix& rho0, const std::vector<CollisionConfig>& cfgs,
                                std::size_t n_steps, Schedule schedule = Schedule::SingleSpecies);

} // namespace wcc
