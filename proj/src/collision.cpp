#include "wcc/collision.hpp"

#include "wcc/error.hpp"
#include "wcc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wcc {

namespace {

constexpr double kConservationTolerance = 1e-10;

} // namespace

CollisionConfig::CollisionConfig(ComplexMatrix h_system, ComplexMatrix v, AncillaSpec ancilla, std::string label)
    : h_system_(checked_hermitian(h_system, "H_S")),
      v_(checked_hermitian(v, "V")),
      ancilla_(std::move(ancilla)),
      label_(std::move(label)),
      rho_th_(thermal_state(ancilla_.H_A, ancilla_.beta)),
      rho_a_(weakly_coherent_state(ancilla_)),
      dissipator_() {
    if (!(ancilla_.beta > 0.0) || !std::isfinite(ancilla_.beta)) {
        throw Error(ErrorKind::InvalidArgument, "ancilla beta must satisfy 0 < beta < inf");
    }
    ancilla_.H_A = checked_hermitian(ancilla_.H_A, "H_A");
    const std::size_t d_s = d_system();
    const std::size_t d_a = d_ancilla();
    if (static_cast<std::size_t>(v_.rows()) != d_s * d_a) {
        throw Error(ErrorKind::DimensionMismatch, "V must act on the joint system-ancilla space");
    }
    h_free_ = kron(h_system_, identity(d_a)) + kron(identity(d_s), ancilla_.H_A);
    g_ = checked_hermitian(ancilla_average(v_, ancilla_.chi, d_s), "G");
    dissipator_ = thermal_dissipator(v_, rho_th_.matrix(), d_s);
    energy_scale_ = hermitian_norm(h_system_) + hermitian_norm(ancilla_.H_A);
    const double scale = std::max(max_abs(v_) * max_abs(h_free_), std::numeric_limits<double>::min());
    strict_ = max_abs(commutator(v_, h_free_)) <= kConservationTolerance * scale;
}

CollisionLedger& CollisionLedger::operator+=(const CollisionLedger& o) {
    dE += o.dE;
    Q_A += o.Q_A;
    W += o.W;
    W_C += o.W_C;
    Q_inc += o.Q_inc;
    Sigma += o.Sigma;
    mutual_info += o.mutual_info;
    rel_entropy_ancilla += o.rel_entropy_ancilla;
    C_before += o.C_before;
    C_after += o.C_after;
    dF += o.dF;
    return *this;
}

ComplexMatrix build_unitary(const CollisionConfig& cfg, std::size_t species_count) {
    if (species_count == 0) {
        throw Error(ErrorKind::InvalidArgument, "species_count must be >= 1");
    }
    const double tau = cfg.tau();
    const ComplexMatrix h = (tau / static_cast<double>(species_count)) * cfg.h_free() + std::sqrt(tau) * cfg.v();
    return expm_unitary(h, 1.0);
}

CollisionResult collide(const DensityMatrix& rho_S, const CollisionConfig& cfg, std::size_t species_count) {
    const std::size_t d_s = cfg.d_system();
    const std::size_t d_a = cfg.d_ancilla();
    if (rho_S.dim() != d_s) {
        throw Error(ErrorKind::DimensionMismatch, "collide: system state dimension differs from config");
    }
    const ComplexMatrix u = build_unitary(cfg, species_count);
    const ComplexMatrix joint = u * kron(rho_S.matrix(), cfg.rho_ancilla().matrix()) * u.adjoint();

    DensityMatrix rho_sa(joint);
    DensityMatrix rho_s_after = reduce(rho_sa, d_s, d_a, Subsystem::System);
    DensityMatrix rho_a_after = reduce(rho_sa, d_s, d_a, Subsystem::Ancilla);

    const ComplexMatrix& hs = cfg.h_system();
    const ComplexMatrix& ha = cfg.ancilla().H_A;
    const double tau = cfg.tau();
    const double beta = cfg.beta();

    CollisionLedger l;
    l.dE = expectation(hs, rho_s_after.matrix()) - expectation(hs, rho_S.matrix());
    l.Q_A = expectation(ha, rho_a_after.matrix()) - expectation(ha, cfg.rho_ancilla().matrix());
    l.W = l.dE + l.Q_A;
    const Complex i_unit{0.0, 1.0};
    l.W_C = (i_unit * cfg.lambda() * tau * (commutator(cfg.G(), hs) * rho_S.matrix()).trace()).real();
    l.Q_inc = tau * expectation(hs, unvec(cfg.dissipator() * vec(rho_S.matrix()), d_s));
    l.mutual_info = mutual_information(rho_sa, d_s, d_a);
    l.rel_entropy_ancilla = relative_entropy(rho_a_after, cfg.rho_ancilla());
    l.Sigma = l.mutual_info + l.rel_entropy_ancilla;
    l.C_before = relative_entropy_of_coherence(cfg.rho_ancilla(), ha);
    l.C_after = relative_entropy_of_coherence(rho_a_after, ha);
    l.dF = free_energy(rho_s_after, hs, beta) - free_energy(rho_S, hs, beta);

    return CollisionResult{std::move(rho_s_after), std::move(rho_a_after), std::move(rho_sa), l};
}

TrajectoryRecord run_trajectory(const DensityMatrix& rho0, const std::vector<CollisionConfig>& cfgs,
                                std::size_t n_steps, Schedule schedule) {
    if (cfgs.empty()) {
        throw Error(ErrorKind::InvalidArgument, "run_trajectory needs at least one species");
    }
    if (schedule == Schedule::SingleSpecies && cfgs.size() != 1) {
        throw Error(ErrorKind::InvalidArgument, "SingleSpecies schedule takes exactly one config");
    }
    const double tau = cfgs.front().tau();
    for (const auto& c : cfgs) {
        if (c.d_system() != rho0.dim()) {
            throw Error(ErrorKind::DimensionMismatch, "species '" + c.label() + "' has the wrong system dimension");
        }
        if (c.tau() != tau) {
            throw Error(ErrorKind::InvalidArgument, "all species must share the round duration tau");
        }
    }
    const std::size_t m = cfgs.size();

    TrajectoryRecord rec{rho0, {}, {}};
    for (const auto& c : cfgs) {
        rec.labels.push_back(c.label());
    }
    rec.steps.reserve(n_steps);
    CollisionLedger total;
    std::vector<CollisionLedger> total_per(m);
    DensityMatrix rho = rho0;
    for (std::size_t n = 1; n <= n_steps; ++n) {
        CollisionLedger round;
        std::vector<CollisionLedger> per(m);
        for (std::size_t j = 0; j < m; ++j) {
            CollisionResult r = collide(rho, cfgs[j], m);
            per[j] = r.ledger;
            round += r.ledger;
            total_per[j] += r.ledger;
            rho = std::move(r.rho_S);
        }
        total += round;
        rec.steps.push_back(TrajectoryStep{n, static_cast<double>(n) * tau, rho, round, std::move(per), total,
                                           total_per});
    }
    return rec;
}

} // namespace wcc
