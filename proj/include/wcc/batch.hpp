// batch.hpp: data-parallel kernels over independent problems.
//
// Randomised collision suites (one seeded stream per instance) and tau-sweeps
// of the stroboscopic-vs-continuum distance. Each kernel takes an Execution;
// the serial path is the reference and both paths agree bit for bit.

#pragma once

#include "wcc/collision.hpp"
#include "wcc/lindblad.hpp"
#include "wcc/parallel.hpp"
#include "wcc/state.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace wcc {

enum class SuiteKind {
    Generic,            // random Hermitian H_S, H_A, V
    EnergyConserving,   // resonant eigenoperator couplings, [V, H_S + H_A] = 0
    Mixed,              // alternates the two above
    QubitFixture,       // the qubit example with a random rho_S
};

std::optional<SuiteKind> parse_suite_kind(std::string_view name);
std::string_view to_string(SuiteKind kind);

struct SuiteOptions {
    std::size_t n_instances = 1000;
    std::uint64_t seed = 42;
    SuiteKind kind = SuiteKind::Mixed;
    double tau_min = 1e-4;
    double tau_max = 1e-1;
};

struct SuiteInstance {
    CollisionConfig cfg;
    DensityMatrix rho_S;
};

SuiteInstance make_instance(const SuiteOptions& options, std::size_t index);

struct InstanceResult {
    std::size_t index = 0;
    std::size_t d_system = 0;
    std::size_t d_ancilla = 0;
    double tau = 0.0;
    double beta = 0.0;
    double lambda = 0.0;
    bool strict = false;
    double energy_scale = 0.0;
    CollisionLedger ledger;
    double joint_entropy_residual = 0.0;  // S(rho'_SA) - S(rho_S) - S(rho_A)
    double coherence_bound = 0.0;         // beta W_C + (C_after - C_before)
};

std::vector<InstanceResult> run_suite(const SuiteOptions& options, Execution exec = Execution::Serial);

struct SuiteSummary {
    std::size_t n = 0;
    std::size_t n_strict = 0;
    double min_sigma = 0.0;
    double min_mutual_info = 0.0;
    double min_rel_entropy = 0.0;
    double max_joint_entropy_residual = 0.0;
    double max_relative_work = 0.0;    // max |W| / (||H_S|| + ||H_A||) over strict instances
    double min_coherence_bound = 0.0;
};

SuiteSummary summarize(const std::vector<InstanceResult>& results);

/// Stroboscopic RoundRobin dynamics against the additive Lindblad generator.
/// The tau fields of the bath specs are overwritten per sweep point.
struct ConvergenceProblem {
    ComplexMatrix h_system;
    std::vector<BathInput> baths;
    DensityMatrix rho0;
    double t_final = 2.0;
};

struct ConvergencePoint {
    double tau = 0.0;
    double max_trace_distance = 0.0;
};

// Each tau must divide t_final into an integer number of rounds (within 1e-9).
std::vector<ConvergencePoint> convergence_sweep(const ConvergenceProblem& problem, const std::vector<double>& taus,
                                                Execution exec = Execution::Serial);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace wcc
