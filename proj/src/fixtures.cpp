#include "wcc/fixtures.hpp"

#include <array>
#include <utility>

namespace wcc {

ComplexMatrix QubitExample::h_system() const { return (omega / 2.0) * pauli::sigma_z(); }

ComplexMatrix QubitExample::h_ancilla() const { return (omega / 2.0) * pauli::sigma_z(); }

ComplexMatrix QubitExample::interaction() const {
    return g * (kron(pauli::sigma_plus(), pauli::sigma_minus()) + kron(pauli::sigma_minus(), pauli::sigma_plus()));
}

ComplexMatrix QubitExample::chi() const { return pauli::sigma_x(); }

AncillaSpec QubitExample::ancilla(double tau) const { return AncillaSpec{h_ancilla(), beta, chi(), lambda, tau}; }

CollisionConfig QubitExample::config(double tau, std::string label) const {
    return CollisionConfig(h_system(), interaction(), ancilla(tau), std::move(label));
}

std::vector<EigenoperatorCoupling> QubitExample::couplings() const {
    return {make_coupling(h_system(), h_ancilla(), pauli::sigma_minus(), pauli::sigma_minus(), omega, Complex(g, 0.0))};
}

namespace {

ComplexMatrix ladder_levels() {
    ComplexMatrix h = ComplexMatrix::Zero(3, 3);
    h(0, 0) = 1.6;
    h(1, 1) = 0.7;
    return h;
}

ComplexMatrix unit(Eigen::Index i, Eigen::Index j) {
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(i, j) = 1.0;
    return m;
}

} // namespace

ComplexMatrix QutritLadder::h_system() const { return ladder_levels(); }

ComplexMatrix QutritLadder::h_ancilla() const { return ladder_levels(); }

ComplexMatrix QutritLadder::interaction() const {
    const std::array<std::pair<Eigen::Index, Eigen::Index>, 3> transitions{{{0, 1}, {1, 2}, {0, 2}}};
    const std::array<Complex, 3> strengths{Complex(0.8, 0.0), Complex(0.6, 0.3), Complex(0.5, 0.0)};
    ComplexMatrix v = ComplexMatrix::Zero(9, 9);
    for (std::size_t k = 0; k < transitions.size(); ++k) {
        const auto [hi, lo] = transitions[k];
        const ComplexMatrix l = unit(lo, hi);
        const ComplexMatrix term = strengths[k] * kron(l.adjoint(), l);
        v += term + term.adjoint();
    }
    return v;
}

ComplexMatrix QutritLadder::chi() const {
    ComplexMatrix c = ComplexMatrix::Zero(3, 3);
    c(0, 2) = c(2, 0) = 1.0;
    c(0, 1) = c(1, 0) = 0.5;
    return c;
}

AncillaSpec QutritLadder::ancilla(double tau) const { return AncillaSpec{h_ancilla(), beta, chi(), lambda, tau}; }

DensityMatrix QutritLadder::initial_state() const {
    ComplexMatrix rho = ComplexMatrix::Zero(3, 3);
    rho(0, 0) = 0.2;
    rho(1, 1) = 0.3;
    rho(2, 2) = 0.5;
    rho(0, 1) = rho(1, 0) = 0.1;
    return DensityMatrix(rho);
}

} // namespace wcc
