#include <benchmark/benchmark.h>

#include "loggas/boson_model.hpp"
#include "loggas/ensemble.hpp"
#include "loggas/frank_wolfe.hpp"
#include "loggas/hermitian.hpp"
#include "loggas/kernel.hpp"
#include "loggas/mcmc.hpp"

namespace {

using namespace loggas;

EnsembleSpec boson_spec() { return EnsembleSpec::make(2, 1.0, PowerExp{0.0, 1.0}); }

void bm_kernel_assembly(benchmark::State& state) {
    const EnsembleSpec spec = boson_spec();
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        InteractionKernel k = assemble_kernel(spec, 1e-4, 6.0, m);
        benchmark::DoNotOptimize(k.K.data());
    }
}
BENCHMARK(bm_kernel_assembly)->Arg(100)->Arg(200)->Arg(400);

void bm_minimize(benchmark::State& state) {
    const EnsembleSpec spec = boson_spec();
    const int m = static_cast<int>(state.range(0));
    const InteractionKernel k = assemble_kernel(spec, 1e-4, 6.0, m);
    for (auto _ : state) {
        RateReport rep = minimize(k, spec.kappa, 1e-6);
        benchmark::DoNotOptimize(rep.energy_value);
    }
}
BENCHMARK(bm_minimize)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void bm_chain_sweeps(benchmark::State& state) {
    const EnsembleSpec spec = boson_spec();
    ChainConfig cfg;
    cfg.n = static_cast<int>(state.range(0));
    cfg.sweeps = 60;
    cfg.burn_in = 50;
    cfg.thinning = 1;
    cfg.seed = 7;
    for (auto _ : state) {
        SampleBatch b = run_chain(spec, cfg);
        benchmark::DoNotOptimize(b.acceptance_rate);
    }
}
BENCHMARK(bm_chain_sweeps)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void bm_eigensolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const HermitianMatrix h = sample_wishart(n, 0, 42);
    for (auto _ : state) {
        auto es = hermitian_eigensolve(h);
        benchmark::DoNotOptimize(es.values.data());
    }
}
BENCHMARK(bm_eigensolve)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
