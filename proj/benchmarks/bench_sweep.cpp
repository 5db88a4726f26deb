// Serial reference kernel vs the OpenMP row-parallel kernel on a small grid.
// Built only when google benchmark is available (see the top-level CMakeLists).

#include <benchmark/benchmark.h>

#include "hetlab/sweep.hpp"

using namespace hetlab;

namespace {

SweepConfig bench_config() {
    SweepConfig cfg;
    cfg.nx = cfg.ny = 64;  // default (0.9, 5]^2 window at e = (1, 0.8)
    return cfg;
}

void BM_SweepSerial(benchmark::State& state) {
    const SweepConfig cfg = bench_config();
    for (auto _ : state) {
        SweepResult res = run_sweep_serial(cfg);
        benchmark::DoNotOptimize(res.codes.data());
        benchmark::ClobberMemory();
    }
}

void BM_SweepParallel(benchmark::State& state) {
    const SweepConfig cfg = bench_config();
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) {
        SweepResult res = run_sweep_parallel(cfg, jobs);
        benchmark::DoNotOptimize(res.codes.data());
        benchmark::ClobberMemory();
    }
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
