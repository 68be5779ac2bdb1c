// Serial reference vs OpenMP kernels. The thread count is the benchmark
// argument; 0 means the serial reference.
#include <benchmark/benchmark.h>
#include <omp.h>

#include "dengue/comparison.hpp"
#include "dengue/config.hpp"
#include "dengue/reference.hpp"
#include "dengue/synthetic.hpp"

using namespace dengue;

namespace {

constexpr double kTruth[kThetaDim] = {0.0567, 0.047, 190.72, 61.817, 0.085, 25.0};

FitSetup fit_setup() {
    FitSetup s;
    s.base.pop = kFitPopulation;
    s.i0 = 200.0;
    return s;
}

const CaseSeries& bench_data() {
    static const CaseSeries data = generate_synthetic(fit_setup(), kTruth, 25.0, 365, 1);
    return data;
}

SamplerConfig sampler() {
    SamplerConfig cfg;
    cfg.chains = 4;
    cfg.iters = 1000;
    cfg.warmup = 250;
    cfg.seed = 1;
    return cfg;
}

void threads(const benchmark::State& state) {
    if (state.range(0) > 0) omp_set_num_threads(static_cast<int>(state.range(0)));
}

void BM_outbreak_probability(benchmark::State& state) {
    threads(state);
    const ModelParams p = comparison_base();
    for (auto _ : state) {
        const auto s = state.range(0) == 0
                           ? serial::outbreak_probability(p, single_introduction(p), PathOptions{}, 2000, 1)
                           : outbreak_probability(p, single_introduction(p), PathOptions{}, 2000, 1);
        benchmark::DoNotOptimize(s);
    }
}

void BM_r0_heatmap(benchmark::State& state) {
    threads(state);
    const Axis a1 = Axis::parse("beta_np:0:0.15", 6);
    const Axis a2 = Axis::parse("beta_peak:0:0.6", 6);
    for (auto _ : state) {
        const GridResult g = state.range(0) == 0 ? serial::r0_heatmap(ModelParams{}, a1, a2)
                                                 : r0_heatmap(ModelParams{}, a1, a2);
        benchmark::DoNotOptimize(g);
    }
}

void BM_run_mh(benchmark::State& state) {
    threads(state);
    const FitSetup setup = fit_setup();
    for (auto _ : state) {
        const PosteriorChains pc = state.range(0) == 0 ? serial::run_mh(bench_data(), PriorSpec{}, setup, sampler())
                                                       : run_mh(bench_data(), PriorSpec{}, setup, sampler());
        benchmark::DoNotOptimize(pc);
    }
}

void BM_posterior_predictive(benchmark::State& state) {
    threads(state);
    const FitSetup setup = fit_setup();
    static const PosteriorChains pc = serial::run_mh(bench_data(), PriorSpec{}, setup, sampler());
    PredictiveOptions po;
    po.draws = 200;
    for (auto _ : state) {
        const PredictiveBand b = state.range(0) == 0 ? serial::posterior_predictive(pc, bench_data(), setup, po)
                                                     : posterior_predictive(pc, bench_data(), setup, po);
        benchmark::DoNotOptimize(b);
    }
}

void thread_args(benchmark::internal::Benchmark* b) {
    b->Arg(0);
    for (int t = 1; t <= omp_get_num_procs(); t *= 2) b->Arg(t);
    b->ArgName("threads")->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_outbreak_probability)->Apply(thread_args);
BENCHMARK(BM_r0_heatmap)->Apply(thread_args);
BENCHMARK(BM_run_mh)->Apply(thread_args);
BENCHMARK(BM_posterior_predictive)->Apply(thread_args);

BENCHMARK_MAIN();
