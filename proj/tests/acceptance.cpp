// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include "wcc/batch.hpp"
#include "wcc/cli.hpp"
#include "wcc/collision.hpp"
#include "wcc/fixtures.hpp"
#include "wcc/lindblad.hpp"
#include "wcc/perturbation.hpp"
#include "wcc/random.hpp"
#include "wcc/spectral.hpp"
#include "wcc/state.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <string>
#include <vector>

using namespace wcc;

namespace {

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
    std::printf("[%2d] %-4s %s: %s\n", id, pass ? "PASS" : "FAIL", title, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string num(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const QubitExample kQubit{};

DensityMatrix qubit_rho0() { return DensityMatrix(from_rows({{0.7, 0.1}, {0.1, 0.3}})); }

// Coherent state used for the tau-halving identities.
DensityMatrix coherent_rho() {
    return DensityMatrix(from_rows({{0.4, Complex(0.2, -0.1)}, {Complex(0.2, 0.1), 0.6}}));
}

const std::vector<double> kHalvingTaus{1e-2, 5e-3, 2.5e-3, 1.25e-3};

std::vector<double> ratios(const std::vector<double>& r) {
    std::vector<double> q;
    for (std::size_t k = 0; k + 1 < r.size(); ++k) q.push_back(r[k] / r[k + 1]);
    return q;
}

bool all_within(const std::vector<double>& q, double lo, double hi) {
    return std::all_of(q.begin(), q.end(), [&](double x) { return x >= lo && x <= hi; });
}

std::string list(const std::vector<double>& q) {
    std::string s = "{";
    for (std::size_t i = 0; i < q.size(); ++i) s += (i ? ", " : "") + num(q[i]);
    return s + "}";
}

struct IdentityResiduals {
    std::vector<double> mutual_info;
    std::vector<double> rel_entropy;
};

IdentityResiduals identity_residuals() {
    IdentityResiduals out;
    const DensityMatrix rho = coherent_rho();
    for (double tau : kHalvingTaus) {
        const CollisionLedger l = collide(rho, kQubit.config(tau)).ledger;
        const double dc = l.C_after - l.C_before;
        out.mutual_info.push_back(std::abs(l.mutual_info - predicted_mutual_info(kQubit.beta, l.dF, dc)));
        out.rel_entropy.push_back(std::abs(l.rel_entropy_ancilla - predicted_rel_entropy(kQubit.beta, l.W_C, dc)));
    }
    return out;
}

void criterion_1(SuiteSummary& mixed_summary) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteOptions o;
    o.n_instances = 1000;
    o.seed = 42;
    o.kind = SuiteKind::Mixed;
    const auto res = run_suite(o, Execution::Parallel);
    const double elapsed = seconds_since(t0);
    mixed_summary = summarize(res);
    const auto& s = mixed_summary;
    const bool pass = s.n == 1000 && s.min_sigma >= -1e-9 && s.min_mutual_info >= -1e-9 && s.min_rel_entropy >= -1e-9 &&
                      elapsed < 30.0;
    report(1, "entropy production positivity", pass,
           "n=" + std::to_string(s.n) + " min Sigma=" + num(s.min_sigma) + " min I=" + num(s.min_mutual_info) +
               " min Srel=" + num(s.min_rel_entropy) + " time=" + num(elapsed) + "s");
}

void criterion_2() {
    SuiteOptions o;
    o.n_instances = 1000;
    o.seed = 7;
    o.kind = SuiteKind::EnergyConserving;
    const SuiteSummary s = summarize(run_suite(o, Execution::Parallel));
    const bool pass = s.n_strict == s.n && s.max_relative_work <= 1e-9;
    report(2, "strict energy conservation", pass,
           "strict=" + std::to_string(s.n_strict) + "/" + std::to_string(s.n) +
               " max |W|/(|H_S|+|H_A|)=" + num(s.max_relative_work));
}

void criterion_3() {
    double worst = 0.0;
    const auto q = kQubit.couplings();
    const EigenoperatorDissipator d = eigenoperator_dissipator(q, kQubit.h_ancilla(), kQubit.beta);
    const double qubit_ratio = d.gamma_plus[0] / d.gamma_minus[0];
    worst = std::max(worst, std::abs(qubit_ratio / std::exp(-kQubit.beta * kQubit.omega) - 1.0));
    const double target_err = std::abs(qubit_ratio / (1.0 / 3.0) - 1.0);

    SplitMix64 rng(2024);
    for (int n = 0; n < 200; ++n) {
        std::vector<double> e{rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)};
        std::sort(e.begin(), e.end());
        const ComplexMatrix u_s = random_unitary(rng, 3);
        const ComplexMatrix u_a = random_unitary(rng, 3);
        ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
        for (int i = 0; i < 3; ++i) diag(i, i) = e[i];
        const ComplexMatrix h_s = u_s * diag * u_s.adjoint();
        const ComplexMatrix h_a = u_a * diag * u_a.adjoint();
        const double beta = rng.uniform(0.1, 3.0);
        std::vector<EigenoperatorCoupling> cs;
        for (int hi = 1; hi < 3; ++hi) {
            for (int lo = 0; lo < hi; ++lo) {
                ComplexMatrix kb = ComplexMatrix::Zero(3, 3);
                kb(lo, hi) = 1.0;
                cs.push_back(make_coupling(h_s, h_a, u_s * kb * u_s.adjoint(), u_a * kb * u_a.adjoint(), e[hi] - e[lo],
                                           Complex(rng.normal(), rng.normal())));
            }
        }
        const EigenoperatorDissipator r = eigenoperator_dissipator(cs, h_a, beta);
        for (std::size_t k = 0; k < cs.size(); ++k) {
            const double ratio = r.gamma_plus[k] / r.gamma_minus[k];
            worst = std::max(worst, std::abs(ratio / std::exp(-beta * cs[k].omega) - 1.0));
        }
    }
    report(3, "detailed balance", worst <= 1e-10 && target_err <= 1e-10,
           "qubit gamma+/gamma-=" + num(qubit_ratio) + " max rel err=" + num(worst));
}

void criterion_4() {
    const double tau = 1e-2;
    const LindbladGenerator gen = build_generator(kQubit.h_system(), kQubit.ancilla(tau), kQubit.interaction());
    const double g_err = max_abs(gen.species()[0].G - kQubit.g * pauli::sigma_x());
    const EigenoperatorDissipator ref = eigenoperator_dissipator(kQubit.couplings(), kQubit.h_ancilla(), kQubit.beta);
    const double d_err = max_abs(gen.dissipator() - ref.dissipator);
    report(4, "qubit generator structure", g_err <= 1e-12 && d_err <= 1e-9,
           "|G - g sx|=" + num(g_err) + " |D - amplitude damping|=" + num(d_err));
}

double sweep_slope(const ConvergenceProblem& p, const std::vector<double>& taus, std::vector<double>& dist) {
    const auto pts = convergence_sweep(p, taus, Execution::Parallel);
    dist.clear();
    for (const auto& x : pts) dist.push_back(x.max_trace_distance);
    return loglog_slope(taus, dist);
}

void criterion_5() {
    const auto t0 = std::chrono::steady_clock::now();
    const ConvergenceProblem p{kQubit.h_system(), {BathInput{kQubit.ancilla(1.0), kQubit.interaction(), "A"}},
                               qubit_rho0(), 2.0};
    const std::vector<double> taus{4e-2, 1e-2, 2.5e-3};
    std::vector<double> dist;
    const double slope = sweep_slope(p, taus, dist);
    const double elapsed = seconds_since(t0);
    report(5, "continuous-time limit", slope >= 0.4 && slope <= 0.7 && elapsed < 10.0,
           "max trace distance " + list(dist) + " slope=" + num(slope) + " (window [0.4, 0.7]) time=" +
               num(elapsed) + "s");
}

void criterion_6(const IdentityResiduals& r) {
    const auto qi = ratios(r.mutual_info);
    const auto qs = ratios(r.rel_entropy);
    report(6, "perturbative entropic identities", all_within(qi, 2.4, 3.2) && all_within(qs, 2.4, 3.2),
           "halving ratios I " + list(qi) + " Srel " + list(qs) + " (window [2.4, 3.2])");
}

void criterion_7(const IdentityResiduals& r, const SuiteSummary& mixed) {
    double k = 0.0;
    for (std::size_t i = 0; i < kHalvingTaus.size(); ++i) {
        k = std::max(k, r.rel_entropy[i] / std::pow(kHalvingTaus[i], 1.5));
    }
    SuiteOptions o;
    o.n_instances = 1000;
    o.seed = 42;
    o.kind = SuiteKind::QubitFixture;
    o.tau_min = kHalvingTaus.back();
    o.tau_max = kHalvingTaus.front();
    const auto res = run_suite(o, Execution::Parallel);
    double margin = std::numeric_limits<double>::infinity();
    double min_srel = mixed.min_rel_entropy;
    for (const auto& x : res) {
        margin = std::min(margin, x.coherence_bound + k * std::pow(x.tau, 1.5));
        min_srel = std::min(min_srel, x.ledger.rel_entropy_ancilla);
    }
    report(7, "coherence bound", min_srel >= -1e-9 && margin >= 0.0,
           "min Srel=" + num(min_srel) + " K=" + num(k) + " min(beta W_C + dC + K tau^1.5)=" + num(margin));
}

void criterion_8() {
    const AncillaSpec spec = kQubit.ancilla(1.0);
    const LindbladGenerator gen = build_generator(kQubit.h_system(), spec, kQubit.interaction());
    IntegrationOptions opts;
    opts.record_every = 100;
    const Trajectory traj = integrate(gen, qubit_rho0(), 2.0, 1e-3, opts);
    const double beta = kQubit.beta;
    const auto free_energy_of = [&](const ComplexVector& x) {
        return free_energy(DensityMatrix(unvec(x, 2)), gen.h_system(), beta);
    };
    const double h = 1e-5;
    double worst = 0.0;
    std::size_t samples = 0;
    for (std::size_t k = 1; k < traj.states.size(); ++k) {
        const DensityMatrix rho(traj.states[k]);
        const RateLedger rl = rates(gen, rho);
        const ComplexVector x = vec(rho.matrix());
        const double f_dot =
            (free_energy_of(rk4_step(gen.superoperator(), x, h)) - free_energy_of(rk4_step(gen.superoperator(), x, -h))) /
            (2.0 * h);
        worst = std::max(worst, std::abs(rl.Pi - beta * (rl.W_C_total() - f_dot)));
        ++samples;
    }
    report(8, "modified second law", samples == 20 && worst <= 1e-7,
           "samples=" + std::to_string(samples) + " max |Pi - beta(W_C - dF/dt)|=" + num(worst));
}

void criterion_9() {
    std::vector<double> dev;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
        const AncillaSpec spec{kQubit.h_ancilla(), kQubit.beta, kQubit.chi(), 1.0, eps * eps};
        const DensityMatrix rho = weakly_coherent_state(spec);
        const double ratio = ergotropy_exact(rho, spec.H_A) / (relative_entropy_of_coherence(rho, spec.H_A) / spec.beta);
        dev.push_back(std::abs(ratio - 1.0));
    }
    const bool monotone = dev[0] > dev[1] && dev[1] > dev[2];
    report(9, "ergotropy relation", monotone && dev[1] <= 5e-2,
           "|W_erg/(T C) - 1| at eps {1e-1, 1e-2, 1e-3} = " + list(dev));
}

void criterion_10() {
    const auto bath = [](double beta, double lambda, const char* label) {
        QubitExample q;
        q.beta = beta;
        q.lambda = lambda;
        return BathInput{q.ancilla(1.0), q.interaction(), label};
    };
    const ConvergenceProblem p{kQubit.h_system(), {bath(2.0, 0.3, "hot"), bath(0.2, 0.0, "cold")}, qubit_rho0(), 2.0};
    const std::vector<double> taus{4e-2, 1e-2, 2.5e-3};
    std::vector<double> dist;
    const double slope = sweep_slope(p, taus, dist);

    const std::vector<BathInput> incoherent{bath(2.0, 0.0, "hot"), bath(0.2, 0.0, "cold")};
    const DensityMatrix ss = steady_state(multi_bath_generator(kQubit.h_system(), incoherent));
    double up = 0.0, total = 0.0;
    for (double beta : {2.0, 0.2}) {
        const auto r = eigenoperator_dissipator(kQubit.couplings(), kQubit.h_ancilla(), beta);
        up += r.gamma_plus[0];
        total += r.gamma_plus[0] + r.gamma_minus[0];
    }
    const double pop_err = std::abs(ss.matrix()(0, 0).real() - up / total);
    report(10, "multi-bath additivity", slope >= 0.4 && slope <= 0.7 && pop_err <= 1e-8,
           "max trace distance " + list(dist) + " slope=" + num(slope) +
               " (window [0.4, 0.7]) steady-state population err=" + num(pop_err));
}

struct SeriesCase {
    std::function<double(double)> residual;
};

void criterion_11() {
    SplitMix64 rng(11);
    const std::vector<double> eps{1e-2, 5e-3, 2.5e-3, 1.25e-3};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::size_t cases = 0;
    const auto record = [&](const std::function<double(double)>& residual) {
        std::vector<double> r;
        for (double e : eps) r.push_back(residual(e));
        for (double q : ratios(r)) {
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        ++cases;
    };
    // Well-conditioned full-rank instances: populations and gaps >= 0.05.
    const auto draw_state = [&](std::size_t d) {
        for (;;) {
            DensityMatrix rho = random_density_matrix(rng, d);
            const RealVector& p = rho.eigenvalues();
            bool ok = p(0) >= 0.05;
            for (Eigen::Index i = 0; i + 1 < p.size(); ++i) ok = ok && p(i + 1) - p(i) >= 0.05;
            if (ok) return rho;
        }
    };
    for (int n = 0; n < 8; ++n) {
        const std::size_t d = n % 2 == 0 ? 2 : 3;
        const DensityMatrix rho0 = draw_state(d);
        const ComplexMatrix sigma = random_traceless(rng, d);
        const ComplexMatrix mu = random_traceless(rng, d);
        record([&](double e) {
            return std::abs(von_neumann_entropy(DensityMatrix(rho0.matrix() + e * sigma)) -
                            entropy_series(PerturbedState(rho0, sigma, e)));
        });
        record([&](double e) {
            return std::abs(relative_entropy(DensityMatrix(rho0.matrix() + e * mu), DensityMatrix(rho0.matrix() + e * sigma)) -
                            relative_entropy_series(rho0, sigma, mu, e));
        });
    }
    // A qubit with a zero-diagonal perturbation has a coherence that is even
    // in eps, so the coherence series is checked on qutrits.
    for (int n = 0; n < 4; ++n) {
        const DensityMatrix rho0 = draw_state(3);
        const ComplexMatrix chi = random_zero_diagonal(rng, rho0.matrix());
        record([&](double e) {
            return std::abs(relative_entropy_of_coherence(DensityMatrix(rho0.matrix() + e * chi), rho0.matrix()) -
                            coherence_series(PerturbedState(rho0, chi, e)));
        });
    }
    report(11, "perturbation-oracle residual orders", lo >= 6.0 && hi <= 10.0,
           std::to_string(cases) + " series, eps-halving ratios in [" + num(lo) + ", " + num(hi) + "] (window [6, 10])");
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void criterion_12() {
    const auto base = std::filesystem::temp_directory_path() / "wcc-acceptance";
    std::filesystem::remove_all(base);
    const std::string text = R"({"scenario": "bound-check", "seed": 42, "n_instances": 1000})";
    bool identical = true;
    std::vector<std::filesystem::path> dirs{base / "a", base / "b"};
    for (const auto& dir : dirs) {
        ExperimentConfig cfg = parse_config(text);
        cfg.output_dir = dir;
        execute_scenario(cfg);
    }
    for (const char* f : {"report.json", "bound_check.csv"}) {
        const std::string a = slurp(dirs[0] / f);
        identical = identical && !a.empty() && a == slurp(dirs[1] / f);
    }
    std::filesystem::remove_all(base);
    report(12, "CLI determinism", identical, identical ? "report.json and bound_check.csv byte-identical" : "outputs differ");
}

} // namespace

int main() {
    std::printf("acceptance: OpenMP threads=%d\n", max_threads());
    SuiteSummary mixed;
    const IdentityResiduals residuals = identity_residuals();
    const std::vector<std::function<void()>> steps{
        [&] { criterion_1(mixed); }, criterion_2, criterion_3, criterion_4, criterion_5,
        [&] { criterion_6(residuals); }, [&] { criterion_7(residuals, mixed); }, criterion_8, criterion_9,
        criterion_10, criterion_11, criterion_12};
    for (std::size_t i = 0; i < steps.size(); ++i) {
        try {
            steps[i]();
        } catch (const std::exception& e) {
            report(static_cast<int>(i + 1), "criterion", false, std::string("exception: ") + e.what());
        }
    }
    std::printf("acceptance: %d of %zu criteria failed\n", failures, steps.size());
    return failures;
}
