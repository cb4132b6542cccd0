#include "doctest.h"
#include "support.hpp"

#include "wcc/fixtures.hpp"
#include "wcc/lindblad.hpp"
#include "wcc/random.hpp"

#include <cmath>

using namespace wcc;

namespace {

const QubitExample kQubit{};

LindbladGenerator qubit_generator(double lambda) {
    QubitExample q;
    q.lambda = lambda;
    return build_generator(q.h_system(), q.ancilla(1.0), q.interaction());
}

LindbladGenerator ladder_generator(double lambda) {
    QutritLadder q;
    q.lambda = lambda;
    return build_generator(q.h_system(), q.ancilla(1.0), q.interaction());
}

} // namespace

TEST_CASE("vec is column stacking") {
    const ComplexMatrix x = from_rows({{1.0, 2.0}, {3.0, 4.0}});
    const ComplexVector v = vec(x);
    CHECK(v(1) == Complex(3.0));
    CHECK(v(2) == Complex(2.0));
    CHECK(max_abs(unvec(v, 2) - x) == 0.0);
    CHECK(kind_of([&] { unvec(v, 3); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("superoperators act like the maps they represent") {
    SplitMix64 rng(8);
    const ComplexMatrix h = random_hermitian(rng, 3);
    const ComplexMatrix jump = random_complex_gaussian(rng, 3, 3);
    const ComplexMatrix x = random_complex_gaussian(rng, 3, 3);
    const ComplexMatrix direct_h = Complex(0.0, -1.0) * commutator(h, x);
    CHECK(max_abs(unvec(hamiltonian_superoperator(h) * vec(x), 3) - direct_h) < 1e-13);
    const ComplexMatrix ldl = jump.adjoint() * jump;
    const ComplexMatrix direct_d = jump * x * jump.adjoint() - 0.5 * anticommutator(ldl, x);
    CHECK(max_abs(unvec(lindblad_dissipator(jump) * vec(x), 3) - direct_d) < 1e-12);

    // Trace preservation: vec(I)^dag L = 0.
    const Superoperator l = hamiltonian_superoperator(h) + lindblad_dissipator(jump);
    CHECK((vec(identity(3)).adjoint() * l).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("superoperator assembly: serial and parallel agree bit for bit") {
    SplitMix64 rng(9);
    const ComplexMatrix v = random_hermitian(rng, 6);
    const ComplexMatrix rho_th = thermal_state(random_hermitian(rng, 2), 0.7).matrix();
    const Superoperator a = thermal_dissipator(v, rho_th, 3, Execution::Serial);
    const Superoperator b = thermal_dissipator(v, rho_th, 3, Execution::Parallel);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("qubit example: G = g sigma_x and amplitude damping") {
    const LindbladGenerator gen = qubit_generator(0.3);
    CHECK(max_abs(gen.species()[0].G - pauli::sigma_x()) < 1e-12);
    const EigenoperatorDissipator ref = eigenoperator_dissipator(kQubit.couplings(), kQubit.h_ancilla(), kQubit.beta);
    CHECK(ref.gamma_minus[0] == doctest::Approx(0.75));
    CHECK(ref.gamma_plus[0] == doctest::Approx(0.25));
    CHECK(max_abs(gen.dissipator() - ref.dissipator) < 1e-9);
    CHECK(max_abs(gen.h_eff() - (kQubit.h_system() + 0.3 * pauli::sigma_x())) < 1e-12);
    CHECK(max_abs(eigenoperator_coherent_term(kQubit.couplings(), kQubit.chi()) - pauli::sigma_x()) < 1e-15);
    CHECK(max_abs(eigenoperator_interaction(kQubit.couplings()) - kQubit.interaction()) < 1e-15);
}

TEST_CASE("build_generator rejects a non-vanishing first moment") {
    const ComplexMatrix v = kron(pauli::sigma_x(), pauli::sigma_z());  // <sigma_z>_th != 0
    CHECK(kind_of([&] { build_generator(kQubit.h_system(), kQubit.ancilla(1.0), v); }) ==
          ErrorKind::NonVanishingFirstMoment);
}

TEST_CASE("eigenoperator conditions and detailed balance") {
    const ComplexMatrix h = kQubit.h_system();
    CHECK(kind_of([&] { make_coupling(h, h, pauli::sigma_plus(), pauli::sigma_minus(), 1.0, 1.0); }) ==
          ErrorKind::NotEigenoperator);
    CHECK(kind_of([&] { make_coupling(h, h, pauli::sigma_minus(), pauli::sigma_minus(), 2.0, 1.0); }) ==
          ErrorKind::NotEigenoperator);
    for (double beta : {0.1, 1.0, std::log(3.0), 5.0}) {
        const auto r = eigenoperator_dissipator(kQubit.couplings(), kQubit.h_ancilla(), beta);
        CHECK(r.gamma_plus[0] / r.gamma_minus[0] == doctest::Approx(std::exp(-beta)).epsilon(1e-12));
    }
}

TEST_CASE("integration matches the closed-form amplitude-damping solution") {
    const LindbladGenerator gen = qubit_generator(0.0);
    const DensityMatrix rho0(from_rows({{0.7, 0.1}, {0.1, 0.3}}));
    IntegrationOptions opts;
    opts.record_every = 50;
    const Trajectory traj = integrate(gen, rho0, 3.0, 1e-3, opts);
    REQUIRE(traj.times.size() == 61);
    const double gamma = 1.0;  // gamma_- + gamma_+
    const double p_ss = 0.25;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const double t = traj.times[k];
        const double p = p_ss + (0.7 - p_ss) * std::exp(-gamma * t);
        const Complex c = 0.1 * std::exp(Complex(-gamma * t / 2.0, -t));
        CHECK(std::abs(traj.states[k](0, 0).real() - p) < 1e-10);
        CHECK(std::abs(traj.states[k](0, 1) - c) < 1e-10);
    }
}

TEST_CASE("integration guards") {
    const LindbladGenerator gen = qubit_generator(0.3);
    const DensityMatrix rho0(identity(2) / 2.0);
    CHECK(kind_of([&] { integrate(gen, rho0, 1.0, 0.5); }) == ErrorKind::StepTooLarge);
    CHECK(kind_of([&] { integrate(gen, rho0, 1.0, -1.0); }) == ErrorKind::InvalidArgument);
    const Trajectory empty = integrate(gen, rho0, 0.0, 1e-3);
    CHECK(empty.states.size() == 1);
    // A non-trace-preserving "generator" drifts.
    std::vector<SpeciesTerm> bad{SpeciesTerm{"x", 1.0, 0.0, ComplexMatrix::Zero(2, 2), -0.1 * identity(4)}};
    const LindbladGenerator leaky(kQubit.h_system(), bad);
    CHECK(kind_of([&] { integrate(leaky, rho0, 1.0, 1e-2); }) == ErrorKind::TraceDrift);
}

TEST_CASE("steady states") {
    const DensityMatrix ss = steady_state(qubit_generator(0.0));
    CHECK(max_abs(ss.matrix() - thermal_state(kQubit.h_system(), kQubit.beta).matrix()) < 1e-12);
    const DensityMatrix driven = steady_state(qubit_generator(0.3));
    CHECK(max_abs(qubit_generator(0.3).apply(driven.matrix())) < 1e-9);
    // Purely Hamiltonian dynamics has no unique steady state.
    const LindbladGenerator unitary(kQubit.h_system(), {});
    CHECK(kind_of([&] { steady_state(unitary); }) == ErrorKind::DegenerateSteadyState);
}

TEST_CASE("multi-bath generator is additive") {
    QubitExample hot = kQubit, cold = kQubit;
    hot.beta = 0.2;
    cold.beta = 2.0;
    cold.lambda = 0.0;
    const std::vector<BathInput> baths{{hot.ancilla(1.0), hot.interaction(), "hot"},
                                       {cold.ancilla(1.0), cold.interaction(), "cold"}};
    const LindbladGenerator sum = multi_bath_generator(kQubit.h_system(), baths);
    const LindbladGenerator a = build_generator(kQubit.h_system(), hot.ancilla(1.0), hot.interaction());
    const LindbladGenerator b = build_generator(kQubit.h_system(), cold.ancilla(1.0), cold.interaction());
    const Superoperator expected = a.superoperator() + b.dissipator();
    CHECK((sum.superoperator() - expected).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(sum.species().size() == 2);
}

TEST_CASE("thermodynamic rates") {
    const LindbladGenerator gen = qubit_generator(0.3);
    SplitMix64 rng(21);
    for (int i = 0; i < 20; ++i) {
        const DensityMatrix rho = random_density_matrix(rng, 2);
        const RateLedger r = rates(gen, rho);
        CHECK(r.dE_dt == doctest::Approx(r.W_C_total() + r.Q_inc_total()).epsilon(1e-12));
    }
    // Spohn: the incoherent entropy production rate is non-negative.
    const LindbladGenerator undriven = qubit_generator(0.0);
    for (int i = 0; i < 20; ++i) {
        CHECK(rates(undriven, random_density_matrix(rng, 2)).Pi >= -1e-12);
    }
    const DensityMatrix th = thermal_state(kQubit.h_system(), kQubit.beta);
    CHECK(std::abs(rates(undriven, th).Pi) < 1e-12);
    const DensityMatrix pure(from_rows({{1.0, 0.0}, {0.0, 0.0}}));
    CHECK(kind_of([&] { rates(gen, pure); }) == ErrorKind::RankDeficient);
}

TEST_CASE("norm estimate") {
    const Superoperator l = hamiltonian_superoperator(kQubit.h_system());
    // eigenvalues of -i[H, .] are 0, 0, +-i omega
    CHECK(superoperator_norm_estimate(l) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("generator invariants on random thermal-reference models") {
    SplitMix64 rng(77);
    for (int n = 0; n < 20; ++n) {
        const std::size_t d_s = 2 + rng.index(2);
        const std::size_t d_a = 2 + rng.index(2);
        const ComplexMatrix h_a = random_hermitian(rng, d_a);
        const double beta = rng.uniform(0.2, 2.0);
        // Shift V so its first moment vanishes.
        ComplexMatrix v = random_hermitian(rng, d_s * d_a);
        const ComplexMatrix rho_th = thermal_state(h_a, beta).matrix();
        v -= kron(ancilla_average(v, rho_th, d_s), identity(d_a));
        const AncillaSpec spec{h_a, beta, random_zero_diagonal(rng, h_a), rng.uniform(0.0, 1.0), 1.0};
        const LindbladGenerator gen = build_generator(random_hermitian(rng, d_s), spec, v);
        CHECK(is_hermitian(gen.h_eff(), 0.0));
        for (int k = 0; k < 5; ++k) {
            const ComplexMatrix m = random_complex_gaussian(rng, d_s, d_s);
            const double scale = m.norm();
            CHECK(std::abs(gen.apply_dissipator(0, m).trace()) <= 1e-10 * scale);
            CHECK(max_abs(gen.apply(m.adjoint()) - gen.apply(m).adjoint()) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("entropy production is nonnegative for eigenoperator couplings") {
    SplitMix64 rng(78);
    for (int n = 0; n < 20; ++n) {
        const double lambda = rng.uniform(-0.5, 0.5);
        const bool qutrit = n % 2 == 1;
        const LindbladGenerator gen = qutrit ? ladder_generator(lambda) : qubit_generator(lambda);
        const DensityMatrix rho0 = random_density_matrix(rng, qutrit ? 3 : 2);
        const double dt = 0.05 / superoperator_norm_estimate(gen.superoperator());
        IntegrationOptions opts;
        opts.record_every = 20;
        const Trajectory traj = integrate(gen, rho0, 200 * dt, dt, opts);
        for (const auto& s : traj.states) {
            const DensityMatrix rho(s);
            if (rho.min_eigenvalue() > 1e-10) CHECK(rates(gen, rho).Pi >= -1e-9);
        }
    }
}

TEST_CASE("lambda = 0 leaves H_eff = H_S") {
    const LindbladGenerator gen = qubit_generator(0.0);
    CHECK(max_abs(gen.h_eff() - kQubit.h_system()) == 0.0);
}

TEST_CASE("infinite temperature rates are symmetric") {
    const auto r = eigenoperator_dissipator(kQubit.couplings(), kQubit.h_ancilla(), 0.0);
    CHECK(r.gamma_plus[0] == doctest::Approx(r.gamma_minus[0]).epsilon(1e-14));
}

TEST_CASE("Larmor precession and the zero generator") {
    const LindbladGenerator precession(kQubit.h_system(), {});
    const DensityMatrix plus(from_rows({{0.5, 0.5}, {0.5, 0.5}}));
    const Trajectory traj = integrate(precession, plus, 1.0, 1e-3, IntegrationOptions{1000});
    CHECK(std::abs(traj.states.back()(0, 1) - 0.5 * std::exp(Complex(0.0, -1.0))) < 1e-8);
    const LindbladGenerator zero(ComplexMatrix::Zero(2, 2), {});
    const Trajectory still = integrate(zero, plus, 1.0, 0.1);
    CHECK(max_abs(still.states.back() - plus.matrix()) == 0.0);
}

TEST_CASE("two identical species double the dissipator") {
    const std::vector<BathInput> one{{kQubit.ancilla(1.0), kQubit.interaction(), "a"}};
    const std::vector<BathInput> two{{kQubit.ancilla(1.0), kQubit.interaction(), "a"},
                                     {kQubit.ancilla(1.0), kQubit.interaction(), "b"}};
    const LindbladGenerator g1 = multi_bath_generator(kQubit.h_system(), one);
    const LindbladGenerator g2 = multi_bath_generator(kQubit.h_system(), two);
    CHECK((g2.dissipator() - 2.0 * g1.dissipator()).cwiseAbs().maxCoeff() < 1e-15);
    const LindbladGenerator direct = build_generator(kQubit.h_system(), kQubit.ancilla(1.0), kQubit.interaction());
    CHECK((g1.superoperator() - direct.superoperator()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rates at stationary points") {
    const LindbladGenerator gen = qubit_generator(0.3);
    const RateLedger at_ss = rates(gen, steady_state(gen));
    CHECK(std::abs(at_ss.dE_dt) < 1e-9);
    CHECK(at_ss.Pi == doctest::Approx(-kQubit.beta * at_ss.Q_inc_total()).epsilon(1e-9));
    CHECK(at_ss.Pi >= 0.0);
    const DensityMatrix driven = steady_state(gen);
    CHECK(std::abs(driven.matrix()(0, 1)) > 1e-3);

    const LindbladGenerator undriven = qubit_generator(0.0);
    const RateLedger eq = rates(undriven, thermal_state(kQubit.h_system(), kQubit.beta));
    for (double x : {eq.dE_dt, eq.S_rate, eq.Pi, eq.W_C_total(), eq.Q_inc_total()}) CHECK(std::abs(x) < 1e-9);
}
