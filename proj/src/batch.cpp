#include "wcc/batch.hpp"

#include "wcc/error.hpp"
#include "wcc/fixtures.hpp"
#include "wcc/random.hpp"
#include "wcc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace wcc {

std::optional<SuiteKind> parse_suite_kind(std::string_view name) {
    if (name == "generic") return SuiteKind::Generic;
    if (name == "energy-conserving") return SuiteKind::EnergyConserving;
    if (name == "mixed") return SuiteKind::Mixed;
    if (name == "qubit") return SuiteKind::QubitFixture;
    return std::nullopt;
}

std::string_view to_string(SuiteKind kind) {
    switch (kind) {
    case SuiteKind::Generic: return "generic";
    case SuiteKind::EnergyConserving: return "energy-conserving";
    case SuiteKind::Mixed: return "mixed";
    case SuiteKind::QubitFixture: return "qubit";
    }
    return "unknown";
}

namespace {

ComplexMatrix diagonal(const std::vector<double>& e) {
    ComplexMatrix h = ComplexMatrix::Zero(static_cast<Eigen::Index>(e.size()), static_cast<Eigen::Index>(e.size()));
    for (std::size_t i = 0; i < e.size(); ++i) {
        h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = e[i];
    }
    return h;
}

ComplexMatrix ket_bra(std::size_t d, std::size_t i, std::size_t j) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
    return m;
}

// lambda * sqrt(tau) = u * 0.9 * p_min for a unit-norm chi keeps rho_A >= 0.1 p_min.
AncillaSpec random_ancilla(SplitMix64& rng, const ComplexMatrix& h_a, double beta, double tau) {
    const ComplexMatrix chi = random_zero_diagonal(rng, h_a);
    const double p_min = thermal_state(h_a, beta).min_eigenvalue();
    const double eps = rng.uniform() * 0.9 * p_min;
    return AncillaSpec{h_a, beta, chi, eps / std::sqrt(tau), tau};
}

SuiteInstance generic_instance(SplitMix64& rng, const SuiteOptions& o) {
    const std::size_t d_s = 2 + rng.index(2);
    const std::size_t d_a = 2 + rng.index(2);
    const double tau = rng.log_uniform(o.tau_min, o.tau_max);
    const double beta = rng.uniform(0.2, 2.0);
    const ComplexMatrix h_s = random_hermitian(rng, d_s);
    const ComplexMatrix h_a = random_hermitian(rng, d_a);
    const ComplexMatrix v = random_hermitian(rng, d_s * d_a);
    AncillaSpec spec = random_ancilla(rng, h_a, beta, tau);
    DensityMatrix rho = random_density_matrix(rng, d_s);
    return SuiteInstance{CollisionConfig(h_s, v, std::move(spec)), std::move(rho)};
}

// System and ancilla share their lowest min(d_S, d_A) levels; every shared
// transition carries an eigenoperator coupling. Both bases are then rotated
// by random unitaries.
SuiteInstance conserving_instance(SplitMix64& rng, const SuiteOptions& o) {
    const std::size_t d_s = 2 + rng.index(2);
    const std::size_t d_a = 2 + rng.index(2);
    const double tau = rng.log_uniform(o.tau_min, o.tau_max);
    const double beta = rng.uniform(0.2, 2.0);

    std::vector<double> e_s(d_s);
    for (auto& e : e_s) e = rng.uniform(0.0, 2.0);
    std::sort(e_s.begin(), e_s.end());
    std::vector<double> e_a(d_a);
    for (std::size_t i = 0; i < d_a; ++i) {
        e_a[i] = i < d_s ? e_s[i] : rng.uniform(0.0, 2.0);
    }
    const ComplexMatrix u_s = random_unitary(rng, d_s);
    const ComplexMatrix u_a = random_unitary(rng, d_a);
    const ComplexMatrix h_s = u_s * diagonal(e_s) * u_s.adjoint();
    const ComplexMatrix h_a = u_a * diagonal(e_a) * u_a.adjoint();

    std::vector<EigenoperatorCoupling> couplings;
    const std::size_t shared = std::min(d_s, d_a);
    for (std::size_t hi = 1; hi < shared; ++hi) {
        for (std::size_t lo = 0; lo < hi; ++lo) {
            const ComplexMatrix l = u_s * ket_bra(d_s, lo, hi) * u_s.adjoint();
            const ComplexMatrix a = u_a * ket_bra(d_a, lo, hi) * u_a.adjoint();
            const double re = rng.normal();
            const double im = rng.normal();
            couplings.push_back(make_coupling(h_s, h_a, l, a, e_s[hi] - e_s[lo], 0.7 * Complex(re, im)));
        }
    }
    const ComplexMatrix v = eigenoperator_interaction(couplings);
    AncillaSpec spec = random_ancilla(rng, h_a, beta, tau);
    DensityMatrix rho = random_density_matrix(rng, d_s);
    return SuiteInstance{CollisionConfig(h_s, v, std::move(spec)), std::move(rho)};
}

SuiteInstance qubit_instance(SplitMix64& rng, const SuiteOptions& o) {
    const double tau = rng.log_uniform(o.tau_min, o.tau_max);
    DensityMatrix rho = random_density_matrix(rng, 2);
    return SuiteInstance{QubitExample{}.config(tau), std::move(rho)};
}

} // namespace

SuiteInstance make_instance(const SuiteOptions& options, std::size_t index) {
    if (!(options.tau_min > 0.0) || !(options.tau_max >= options.tau_min)) {
        throw Error(ErrorKind::InvalidArgument, "suite needs 0 < tau_min <= tau_max");
    }
    SplitMix64 rng(stream_seed(options.seed, index));
    switch (options.kind) {
    case SuiteKind::Generic: return generic_instance(rng, options);
    case SuiteKind::EnergyConserving: return conserving_instance(rng, options);
    case SuiteKind::Mixed:
        return index % 2 == 0 ? generic_instance(rng, options) : conserving_instance(rng, options);
    case SuiteKind::QubitFixture: return qubit_instance(rng, options);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown suite kind");
}

std::vector<InstanceResult> run_suite(const SuiteOptions& options, Execution exec) {
    std::vector<InstanceResult> out(options.n_instances);
    parallel_for(options.n_instances, exec, [&](std::size_t i) {
        const SuiteInstance inst = make_instance(options, i);
        const CollisionResult r = collide(inst.rho_S, inst.cfg);
        InstanceResult& res = out[i];
        res.index = i;
        res.d_system = inst.cfg.d_system();
        res.d_ancilla = inst.cfg.d_ancilla();
        res.tau = inst.cfg.tau();
        res.beta = inst.cfg.beta();
        res.lambda = inst.cfg.lambda();
        res.strict = inst.cfg.strict_energy_conserving();
        res.energy_scale = inst.cfg.energy_scale();
        res.ledger = r.ledger;
        res.joint_entropy_residual = von_neumann_entropy(r.rho_SA) - von_neumann_entropy(inst.rho_S) -
                                     von_neumann_entropy(inst.cfg.rho_ancilla());
        res.coherence_bound = res.beta * r.ledger.W_C + (r.ledger.C_after - r.ledger.C_before);
    });
    return out;
}

SuiteSummary summarize(const std::vector<InstanceResult>& results) {
    SuiteSummary s;
    s.n = results.size();
    if (results.empty()) {
        return s;
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    s.min_sigma = s.min_mutual_info = s.min_rel_entropy = s.min_coherence_bound = inf;
    for (const auto& r : results) {
        s.min_sigma = std::min(s.min_sigma, r.ledger.Sigma);
        s.min_mutual_info = std::min(s.min_mutual_info, r.ledger.mutual_info);
        s.min_rel_entropy = std::min(s.min_rel_entropy, r.ledger.rel_entropy_ancilla);
        s.min_coherence_bound = std::min(s.min_coherence_bound, r.coherence_bound);
        s.max_joint_entropy_residual = std::max(s.max_joint_entropy_residual, std::abs(r.joint_entropy_residual));
        if (r.strict) {
            ++s.n_strict;
            s.max_relative_work = std::max(s.max_relative_work, std::abs(r.ledger.W) / r.energy_scale);
        }
    }
    return s;
}

std::vector<ConvergencePoint> convergence_sweep(const ConvergenceProblem& problem, const std::vector<double>& taus,
                                                Execution exec) {
    const LindbladGenerator gen = multi_bath_generator(problem.h_system, problem.baths);
    const double l_norm = superoperator_norm_estimate(gen.superoperator());
    const double dt_target = l_norm > 0.0 ? 0.05 / l_norm : 1e-2;

    std::vector<ConvergencePoint> out(taus.size());
    parallel_for(taus.size(), exec, [&](std::size_t k) {
        const double tau = taus[k];
        const double rounds = problem.t_final / tau;
        const auto n = static_cast<std::size_t>(std::llround(rounds));
        if (!(tau > 0.0) || n == 0 || std::abs(rounds - static_cast<double>(n)) > 1e-9 * rounds) {
            throw Error(ErrorKind::InvalidArgument,
                        "tau = " + std::to_string(tau) + " does not divide t_final into whole rounds");
        }
        std::vector<CollisionConfig> cfgs;
        for (const auto& bath : problem.baths) {
            AncillaSpec spec = bath.spec;
            spec.tau = tau;
            cfgs.emplace_back(problem.h_system, bath.V, std::move(spec), bath.label);
        }
        const Schedule schedule = cfgs.size() == 1 ? Schedule::SingleSpecies : Schedule::RoundRobin;
        const TrajectoryRecord strobe = run_trajectory(problem.rho0, cfgs, n, schedule);

        const auto substeps = static_cast<std::size_t>(std::ceil(tau / dt_target));
        IntegrationOptions opts;
        opts.record_every = substeps;
        const Trajectory cont = integrate(gen, problem.rho0, static_cast<double>(n) * tau,
                                          tau / static_cast<double>(substeps), opts);
        if (cont.states.size() != n + 1) {
            throw Error(ErrorKind::InvalidArgument, "integration grid does not match the collision grid");
        }
        double worst = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            worst = std::max(worst, trace_distance(strobe.steps[s].rho_S.matrix(), cont.states[s + 1]));
        }
        out[k] = ConvergencePoint{tau, worst};
    });
    return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw Error(ErrorKind::InvalidArgument, "slope fit needs at least two matching points");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw Error(ErrorKind::InvalidArgument, "slope fit needs positive data");
        }
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace wcc
