// Serial reference vs OpenMP kernels. Run with:
//   ./bench/lthill_bench --benchmark_min_time=0.5s

#include <benchmark/benchmark.h>

#include "lthill/distributions.hpp"
#include "lthill/ratio_test.hpp"
#include "lthill/rng.hpp"
#include "lthill/study.hpp"
#include "lthill/threshold.hpp"

namespace {

const lthill::SortedSample& bench_sample() {
    static const lthill::SortedSample s = [] {
        lthill::Rng rng(12345);
        return lthill::sample(lthill::DistributionSpec(lthill::Burr(1.0, 1.0, 1.0)),
                              4000, rng);
    }();
    return s;
}

void BM_variance_curve_serial(benchmark::State& state) {
    const auto& s = bench_sample();
    for (auto _ : state) {
        benchmark::DoNotOptimize(lthill::variance_curve_serial(s, 100, 3999));
    }
}

void BM_variance_curve_parallel(benchmark::State& state) {
    const auto& s = bench_sample();
    for (auto _ : state) {
        benchmark::DoNotOptimize(lthill::variance_curve_parallel(s, 100, 3999));
    }
}

void BM_null_ratios_serial(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(lthill::sample_null_ratios_serial(200, 4000, 1));
    }
}

void BM_null_ratios_parallel(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(lthill::sample_null_ratios_parallel(200, 4000, 1));
    }
}

lthill::StudyConfig bench_cfg() {
    lthill::StudyConfig cfg;
    cfg.spec = lthill::Frechet(1.0);
    cfg.n = 500;
    cfg.n_sim = 100;
    for (std::size_t k = 10; k <= 490; k += 10) cfg.k_grid.push_back(k);
    cfg.selector_canonical_p = true;
    cfg.seed = 7;
    return cfg;
}

void BM_study_serial(benchmark::State& state) {
    const auto cfg = bench_cfg();
    for (auto _ : state) {
        benchmark::DoNotOptimize(lthill::run_study_serial(cfg));
    }
}

void BM_study_parallel(benchmark::State& state) {
    const auto cfg = bench_cfg();
    for (auto _ : state) {
        benchmark::DoNotOptimize(lthill::run_study_parallel(cfg));
    }
}

}  // namespace

BENCHMARK(BM_variance_curve_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_variance_curve_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_null_ratios_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_null_ratios_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_study_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_study_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
