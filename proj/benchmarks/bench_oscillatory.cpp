#include <benchmark/benchmark.h>

#include "maxtrunc/fefferman.hpp"
#include "maxtrunc/oscillatory.hpp"
#include "maxtrunc/special_functions.hpp"

using namespace maxtrunc;

static void BM_SineCosineIntegrals(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(osc::sine_cosine_integrals(x));
    x = x < 100.0 ? x * 1.01 : 0.1;
  }
}
BENCHMARK(BM_SineCosineIntegrals);

static void BM_ProductPhaseCentered(benchmark::State& state) {
  const osc::QuadratureConfig cfg;
  const double lambda = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(osc::pv_product_phase(lambda, 0.0, 0.0, cfg));
}
BENCHMARK(BM_ProductPhaseCentered)->RangeMultiplier(10)->Range(100, 100000)->Unit(benchmark::kMillisecond);

static void BM_ProductPhaseShifted(benchmark::State& state) {
  const osc::QuadratureConfig cfg;
  const double lambda = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(osc::pv_product_phase(lambda, 1.5, -0.4, cfg));
}
BENCHMARK(BM_ProductPhaseShifted)->RangeMultiplier(10)->Range(10, 1000)->Unit(benchmark::kMillisecond);

static void BM_PartialSumMatchedRate(benchmark::State& state) {
  const osc::QuadratureConfig cfg;
  const double lambda = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fef::s_partial(lambda, 0.8 * lambda, 0.8 * lambda, 0.8, 0.8, cfg));
}
BENCHMARK(BM_PartialSumMatchedRate)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
