// Serial reference vs OpenMP path for the data-parallel kernels.

#include "wcc/batch.hpp"
#include "wcc/fixtures.hpp"
#include "wcc/lindblad.hpp"
#include "wcc/random.hpp"

#include <benchmark/benchmark.h>

using namespace wcc;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::Serial : Execution::Parallel; }

void BM_CollisionSuite(benchmark::State& state) {
    SuiteOptions o;
    o.n_instances = 256;
    o.seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_suite(o, mode(state)));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(o.n_instances));
}

void BM_DissipatorAssembly(benchmark::State& state) {
    SplitMix64 rng(2);
    const std::size_t d_s = 6, d_a = 3;
    const ComplexMatrix v = random_hermitian(rng, d_s * d_a);
    const ComplexMatrix rho_th = thermal_state(random_hermitian(rng, d_a), 1.0).matrix();
    for (auto _ : state) {
        benchmark::DoNotOptimize(thermal_dissipator(v, rho_th, d_s, mode(state)));
    }
}

void BM_TauSweep(benchmark::State& state) {
    const QubitExample q;
    const ConvergenceProblem p{q.h_system(), {BathInput{q.ancilla(1.0), q.interaction(), "A"}},
                               DensityMatrix(identity(2) / 2.0), 1.0};
    const std::vector<double> taus{0.1, 0.05, 0.025, 0.0125};
    for (auto _ : state) {
        benchmark::DoNotOptimize(convergence_sweep(p, taus, mode(state)));
    }
}

} // namespace

BENCHMARK(BM_CollisionSuite)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DissipatorAssembly)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TauSweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
