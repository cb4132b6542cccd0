// fixtures.hpp: the reference models used by the tests, the CLI and the
// benchmarks.

#pragma once

#include "wcc/collision.hpp"
#include "wcc/lindblad.hpp"
#include "wcc/state.hpp"

#include <cmath>
#include <vector>

namespace wcc {

/// Two-level atom driven through two-level ancillae:
///   H_S = H_A = (omega/2) sigma_z,  V = g (sigma_+ (x) sigma_- + sigma_- (x) sigma_+),
///   chi = sigma_x, so that G = g sigma_x and D is amplitude damping.
struct QubitExample {
    double omega = 1.0;
    double g = 1.0;
    double beta = std::log(3.0);  // beta * omega = ln 3 for the default omega
    double lambda = 0.3;

    ComplexMatrix h_system() const;
    ComplexMatrix h_ancilla() const;
    ComplexMatrix interaction() const;
    ComplexMatrix chi() const;
    AncillaSpec ancilla(double tau) const;
    CollisionConfig config(double tau, std::string label = "A") const;
    // The single coupling L = sigma_-, A = sigma_-.
    std::vector<EigenoperatorCoupling> couplings() const;
};

/// Three-level system and ancilla with levels (1.6, 0.7, 0) coupled on all
/// three transitions; index 0 is the highest level.
struct QutritLadder {
    double beta = 1.0;
    double lambda = 0.3;

    ComplexMatrix h_system() const;
    ComplexMatrix h_ancilla() const;
    ComplexMatrix interaction() const;
    ComplexMatrix chi() const;
    AncillaSpec ancilla(double tau) const;
    DensityMatrix initial_state() const;
};

} // namespace wcc
