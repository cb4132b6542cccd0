#include "wcc/lindblad.hpp"

#include "wcc/error.hpp"
#include "wcc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wcc {

namespace {

constexpr double kFirstMomentTolerance = 1e-9;
constexpr double kEigenoperatorTolerance = 1e-9;
constexpr double kRankThreshold = 1e-10;
constexpr double kSteadyResidual = 1e-9;
constexpr double kLogEigenvalueFloor = 1e-13;
constexpr std::size_t kMaxSteadyStateDim = 16;
constexpr int kPowerIterations = 20;

std::size_t ancilla_dim(const ComplexMatrix& v, std::size_t d_system) {
    const auto joint = static_cast<std::size_t>(v.rows());
    if (d_system == 0 || joint % d_system != 0 || v.rows() != v.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "interaction size is not a multiple of the system dimension");
    }
    return joint / d_system;
}

bool eigenoperator_ok(const ComplexMatrix& h, const ComplexMatrix& op, double omega) {
    const double residual = max_abs(commutator(h, op) + omega * op);
    const double scale = std::max({1.0, max_abs(h), std::abs(omega)}) * max_abs(op);
    return residual <= kEigenoperatorTolerance * std::max(scale, 1e-300);
}

} // namespace

ComplexVector vec(const ComplexMatrix& x) {
    // Eigen storage is column-major, so the raw buffer is already column-stacked.
    return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvec(const ComplexVector& v, std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    if (v.size() != n * n) {
        throw Error(ErrorKind::DimensionMismatch, "unvec: vector length is not d^2");
    }
    return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

Superoperator assemble_superoperator(std::size_t d, const LinearMap& map, Execution exec) {
    const auto n = static_cast<Eigen::Index>(d);
    Superoperator out = Superoperator::Zero(n * n, n * n);
    parallel_for(d * d, exec, [&](std::size_t k) {
        ComplexMatrix unit = ComplexMatrix::Zero(n, n);
        const auto col = static_cast<Eigen::Index>(k);
        unit(col % n, col / n) = 1.0;
        out.col(col) = vec(map(unit));
    });
    return out;
}

Superoperator hamiltonian_superoperator(const ComplexMatrix& h) {
    const Complex minus_i{0.0, -1.0};
    return assemble_superoperator(static_cast<std::size_t>(h.rows()),
                                  [&](const ComplexMatrix& x) -> ComplexMatrix { return minus_i * commutator(h, x); });
}

Superoperator lindblad_dissipator(const ComplexMatrix& jump) {
    require_square(jump, "jump operator");
    const ComplexMatrix ldl = jump.adjoint() * jump;
    return assemble_superoperator(static_cast<std::size_t>(jump.rows()), [&](const ComplexMatrix& x) -> ComplexMatrix {
        return jump * x * jump.adjoint() - 0.5 * (ldl * x + x * ldl);
    });
}

ComplexMatrix ancilla_average(const ComplexMatrix& v, const ComplexMatrix& op, std::size_t d_system) {
    const std::size_t d_a = ancilla_dim(v, d_system);
    if (static_cast<std::size_t>(op.rows()) != d_a) {
        throw Error(ErrorKind::DimensionMismatch, "ancilla operator size does not match interaction");
    }
    return partial_trace(v * kron(identity(d_system), op), d_system, d_a, Subsystem::System);
}

ComplexMatrix system_average(const ComplexMatrix& v, const ComplexMatrix& op, std::size_t d_ancilla) {
    const auto joint = static_cast<std::size_t>(v.rows());
    if (d_ancilla == 0 || joint % d_ancilla != 0) {
        throw Error(ErrorKind::DimensionMismatch, "interaction size is not a multiple of the ancilla dimension");
    }
    const std::size_t d_s = joint / d_ancilla;
    if (static_cast<std::size_t>(op.rows()) != d_s) {
        throw Error(ErrorKind::DimensionMismatch, "system operator size does not match interaction");
    }
    return partial_trace(v * kron(op, identity(d_ancilla)), d_s, d_ancilla, Subsystem::Ancilla);
}

ComplexMatrix apply_thermal_dissipator(const ComplexMatrix& v, const ComplexMatrix& rho_th, const ComplexMatrix& x) {
    const auto d_s = static_cast<std::size_t>(x.rows());
    const auto d_a = static_cast<std::size_t>(rho_th.rows());
    if (static_cast<std::size_t>(v.rows()) != d_s * d_a) {
        throw Error(ErrorKind::DimensionMismatch, "dissipator: interaction size mismatch");
    }
    const ComplexMatrix joint = kron(x, rho_th);
    return -0.5 * partial_trace(double_commutator(v, joint), d_s, d_a, Subsystem::System);
}

Superoperator thermal_dissipator(const ComplexMatrix& v, const ComplexMatrix& rho_th, std::size_t d_system,
                                 Execution exec) {
    return assemble_superoperator(
        d_system, [&](const ComplexMatrix& x) { return apply_thermal_dissipator(v, rho_th, x); }, exec);
}

LindbladGenerator::LindbladGenerator(ComplexMatrix h_system, std::vector<SpeciesTerm> species)
    : h_system_(checked_hermitian(h_system, "H_S")), species_(std::move(species)) {
    const auto d = h_system_.rows();
    h_eff_ = h_system_;
    dissipator_ = Superoperator::Zero(d * d, d * d);
    for (const auto& s : species_) {
        if (s.G.rows() != d || s.dissipator.rows() != d * d || s.dissipator.cols() != d * d) {
            throw Error(ErrorKind::DimensionMismatch, "species '" + s.label + "' does not match system dimension");
        }
        h_eff_ += s.lambda * s.G;
        dissipator_ += s.dissipator;
    }
    h_eff_ = checked_hermitian(h_eff_, "H_eff");
    full_ = hamiltonian_superoperator(h_eff_) + dissipator_;
}

ComplexMatrix LindbladGenerator::apply(const ComplexMatrix& rho) const { return unvec(full_ * vec(rho), dim()); }

ComplexMatrix LindbladGenerator::apply_dissipator(std::size_t species, const ComplexMatrix& rho) const {
    return unvec(species_.at(species).dissipator * vec(rho), dim());
}

namespace {

SpeciesTerm make_species(const ComplexMatrix& h_system, const AncillaSpec& spec, const ComplexMatrix& v,
                         std::string label, Execution exec) {
    const auto d_s = static_cast<std::size_t>(h_system.rows());
    const ComplexMatrix vv = checked_hermitian(v, "V");
    const ComplexMatrix h_a = checked_hermitian(spec.H_A, "H_A");
    if (static_cast<std::size_t>(vv.rows()) != d_s * static_cast<std::size_t>(h_a.rows())) {
        throw Error(ErrorKind::DimensionMismatch, "V must act on the joint system-ancilla space");
    }
    const ComplexMatrix chi = checked_hermitian(spec.chi, "chi");
    const DensityMatrix rho_th = thermal_state(h_a, spec.beta);

    const ComplexMatrix moment = ancilla_average(vv, rho_th.matrix(), d_s);
    if (max_abs(moment) > kFirstMomentTolerance) {
        throw Error(ErrorKind::NonVanishingFirstMoment,
                    "tr_A(V rho_th) = " + std::to_string(max_abs(moment)) + " (max entry); shift V by this term");
    }
    SpeciesTerm out;
    out.label = std::move(label);
    out.beta = spec.beta;
    out.lambda = spec.lambda;
    out.G = checked_hermitian(ancilla_average(vv, chi, d_s), "G");
    out.dissipator = thermal_dissipator(vv, rho_th.matrix(), d_s, exec);
    return out;
}

} // namespace

LindbladGenerator build_generator(const ComplexMatrix& h_system, const AncillaSpec& spec, const ComplexMatrix& v,
                                  std::string label, Execution exec) {
    const ComplexMatrix hs = checked_hermitian(h_system, "H_S");
    std::vector<SpeciesTerm> species;
    species.push_back(make_species(hs, spec, v, std::move(label), exec));
    return LindbladGenerator(hs, std::move(species));
}

LindbladGenerator multi_bath_generator(const ComplexMatrix& h_system, const std::vector<BathInput>& baths,
                                       Execution exec) {
    const ComplexMatrix hs = checked_hermitian(h_system, "H_S");
    std::vector<SpeciesTerm> species;
    species.reserve(baths.size());
    for (const auto& bath : baths) {
        species.push_back(make_species(hs, bath.spec, bath.V, bath.label, exec));
    }
    return LindbladGenerator(hs, std::move(species));
}

EigenoperatorCoupling make_coupling(const ComplexMatrix& h_system, const ComplexMatrix& h_ancilla, ComplexMatrix l,
                                    ComplexMatrix a, double omega, Complex g) {
    if (l.rows() != h_system.rows() || l.cols() != h_system.cols() || a.rows() != h_ancilla.rows() ||
        a.cols() != h_ancilla.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "eigenoperator sizes do not match the Hamiltonians");
    }
    if (!eigenoperator_ok(h_system, l, omega)) {
        throw Error(ErrorKind::NotEigenoperator, "[H_S, L] != -omega L");
    }
    if (!eigenoperator_ok(h_ancilla, a, omega)) {
        throw Error(ErrorKind::NotEigenoperator, "[H_A, A] != -omega A");
    }
    return EigenoperatorCoupling{std::move(l), std::move(a), omega, g};
}

ComplexMatrix eigenoperator_interaction(const std::vector<EigenoperatorCoupling>& couplings) {
    if (couplings.empty()) {
        throw Error(ErrorKind::InvalidArgument, "at least one coupling is required");
    }
    const auto d_s = couplings.front().L.rows();
    const auto d_a = couplings.front().A.rows();
    ComplexMatrix v = ComplexMatrix::Zero(d_s * d_a, d_s * d_a);
    for (const auto& c : couplings) {
        const ComplexMatrix term = c.g * kron(c.L.adjoint(), c.A);
        v += term + term.adjoint();
    }
    return v;
}

ComplexMatrix eigenoperator_coherent_term(const std::vector<EigenoperatorCoupling>& couplings,
                                          const ComplexMatrix& chi) {
    if (couplings.empty()) {
        throw Error(ErrorKind::InvalidArgument, "at least one coupling is required");
    }
    const auto d_s = couplings.front().L.rows();
    ComplexMatrix g = ComplexMatrix::Zero(d_s, d_s);
    for (const auto& c : couplings) {
        const Complex a_chi = (c.A * chi).trace();
        const Complex adag_chi = (c.A.adjoint() * chi).trace();
        g += c.g * a_chi * c.L.adjoint() + std::conj(c.g) * adag_chi * c.L;
    }
    return g;
}

EigenoperatorDissipator eigenoperator_dissipator(const std::vector<EigenoperatorCoupling>& couplings,
                                                 const ComplexMatrix& h_ancilla, double beta) {
    if (couplings.empty()) {
        throw Error(ErrorKind::InvalidArgument, "at least one coupling is required");
    }
    const DensityMatrix rho_th = thermal_state(h_ancilla, beta);
    const auto d_s = couplings.front().L.rows();
    EigenoperatorDissipator out;
    out.dissipator = Superoperator::Zero(d_s * d_s, d_s * d_s);
    for (const auto& c : couplings) {
        if (!eigenoperator_ok(h_ancilla, c.A, c.omega)) {
            throw Error(ErrorKind::NotEigenoperator, "[H_A, A] != -omega A");
        }
        const double g2 = std::norm(c.g);
        const double down = g2 * expectation(c.A * c.A.adjoint(), rho_th.matrix());
        const double up = g2 * expectation(c.A.adjoint() * c.A, rho_th.matrix());
        out.gamma_minus.push_back(down);
        out.gamma_plus.push_back(up);
        out.dissipator += down * lindblad_dissipator(c.L) + up * lindblad_dissipator(c.L.adjoint());
    }
    return out;
}

double superoperator_norm_estimate(const Superoperator& l) {
    const Superoperator gram = l.adjoint() * l;
    ComplexVector x = ComplexVector::Ones(gram.rows()) / std::sqrt(static_cast<double>(gram.rows()));
    double estimate = 0.0;
    for (int k = 0; k < kPowerIterations; ++k) {
        const ComplexVector y = gram * x;
        const double n = y.norm();
        if (n == 0.0) {
            return 0.0;
        }
        estimate = n;
        x = y / n;
    }
    return std::sqrt(estimate);
}

ComplexVector rk4_step(const Superoperator& l, const ComplexVector& x, double h) {
    const ComplexVector k1 = l * x;
    const ComplexVector k2 = l * (x + 0.5 * h * k1);
    const ComplexVector k3 = l * (x + 0.5 * h * k2);
    const ComplexVector k4 = l * (x + h * k3);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory integrate(const LindbladGenerator& gen, const DensityMatrix& rho0, double t_final, double dt,
                     const IntegrationOptions& options) {
    if (rho0.dim() != gen.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "integrate: initial state dimension differs from generator");
    }
    if (!(dt > 0.0) || !(t_final >= 0.0) || !std::isfinite(t_final)) {
        throw Error(ErrorKind::InvalidArgument, "integrate requires dt > 0 and finite t_final >= 0");
    }
    const Superoperator& l = gen.superoperator();
    const double norm = superoperator_norm_estimate(l);
    if (norm > 0.0 && dt > 0.1 / norm) {
        throw Error(ErrorKind::StepTooLarge,
                    "dt = " + std::to_string(dt) + " exceeds 0.1/||L|| = " + std::to_string(0.1 / norm));
    }
    const auto steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-12));
    const double h = steps == 0 ? 0.0 : t_final / static_cast<double>(steps);
    const std::size_t stride = std::max<std::size_t>(options.record_every, 1);
    const std::size_t d = gen.dim();

    Trajectory out;
    out.times.push_back(0.0);
    out.states.push_back(rho0.matrix());
    ComplexVector x = vec(rho0.matrix());
    for (std::size_t n = 1; n <= steps; ++n) {
        x = rk4_step(l, x, h);
        ComplexMatrix rho = unvec(x, d);
        const double drift = std::abs(rho.trace() - Complex(1.0, 0.0));
        if (drift > options.trace_drift_tolerance) {
            throw Error(ErrorKind::TraceDrift, "trace drift " + std::to_string(drift) + " at step " + std::to_string(n));
        }
        rho = (rho + rho.adjoint()) * 0.5;
        const double min_eig = hermitian_eig(rho).eigenvalues(0);
        if (min_eig < -options.positivity_tolerance) {
            throw Error(ErrorKind::PositivityLost,
                        "eigenvalue " + std::to_string(min_eig) + " at step " + std::to_string(n));
        }
        x = vec(rho);
        if (n % stride == 0 || n == steps) {
            out.times.push_back(static_cast<double>(n) * h);
            out.states.push_back(std::move(rho));
        }
    }
    return out;
}

DensityMatrix steady_state(const LindbladGenerator& gen) {
    const std::size_t d = gen.dim();
    if (d > kMaxSteadyStateDim) {
        throw Error(ErrorKind::InvalidArgument, "steady_state supports d <= 16");
    }
    const auto n = static_cast<Eigen::Index>(d * d);
    Superoperator system = gen.superoperator();
    system.row(0).setZero();
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(d); ++i) {
        system(0, i + i * static_cast<Eigen::Index>(d)) = 1.0;
    }
    ComplexVector rhs = ComplexVector::Zero(n);
    rhs(0) = 1.0;

    Eigen::FullPivLU<Superoperator> lu(system);
    lu.setThreshold(kRankThreshold);
    if (lu.rank() < n) {
        throw Error(ErrorKind::DegenerateSteadyState,
                    "constrained generator has rank " + std::to_string(lu.rank()) + " < " + std::to_string(n));
    }
    ComplexMatrix rho = unvec(lu.solve(rhs), d);
    rho = (rho + rho.adjoint()) * 0.5;
    const double residual = max_abs(gen.apply(rho));
    if (residual > kSteadyResidual) {
        throw Error(ErrorKind::DegenerateSteadyState, "steady-state residual " + std::to_string(residual));
    }
    return DensityMatrix(rho);
}

double RateLedger::W_C_total() const {
    double s = 0.0;
    for (double w : W_C_rate) s += w;
    return s;
}

double RateLedger::Q_inc_total() const {
    double s = 0.0;
    for (double q : Q_inc_rate) s += q;
    return s;
}

RateLedger rates(const LindbladGenerator& gen, const DensityMatrix& rho) {
    if (rho.dim() != gen.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "rates: state dimension differs from generator");
    }
    if (rho.min_eigenvalue() < kLogEigenvalueFloor) {
        throw Error(ErrorKind::RankDeficient,
                    "ln rho undefined: eigenvalue " + std::to_string(rho.min_eigenvalue()));
    }
    const ComplexMatrix& hs = gen.h_system();
    const ComplexMatrix l_rho = gen.apply(rho.matrix());
    const ComplexMatrix log_rho = rho.spectrum().apply([](double p) { return std::log(p); });

    RateLedger out;
    out.dE_dt = expectation(hs, l_rho);
    out.S_rate = -expectation(log_rho, l_rho);
    out.Pi = out.S_rate;
    const Complex i_unit{0.0, 1.0};
    for (std::size_t j = 0; j < gen.species().size(); ++j) {
        const SpeciesTerm& s = gen.species()[j];
        const double wc = (i_unit * s.lambda * (commutator(s.G, hs) * rho.matrix()).trace()).real();
        const double q = expectation(hs, gen.apply_dissipator(j, rho.matrix()));
        out.W_C_rate.push_back(wc);
        out.Q_inc_rate.push_back(q);
        out.Pi -= s.beta * q;
    }
    return out;
}

} // namespace wcc
