#include <benchmark/benchmark.h>

#include "maxtrunc/fourier.hpp"
#include "maxtrunc/mpz_max.hpp"
#include "maxtrunc/restriction.hpp"

using namespace maxtrunc;
using grid::GridSpec;

static void BM_GridFourierFft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = GridSpec::centered(2, n, 8.0 / static_cast<double>(n));
  const auto xi = grid::frequency_grid_for(x);
  const auto f = mpz::smooth_random_signal(x, 1);
  for (auto _ : state) benchmark::DoNotOptimize(grid::grid_fourier(f, xi));
}
BENCHMARK(BM_GridFourierFft)->RangeMultiplier(2)->Range(32, 256);

static void BM_GridFourierDirect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = GridSpec::centered(2, n, 8.0 / static_cast<double>(n));
  const auto xi = grid::frequency_grid_for(x);
  const auto f = mpz::smooth_random_signal(x, 1);
  for (auto _ : state) benchmark::DoNotOptimize(grid::grid_fourier_direct(f, xi));
}
BENCHMARK(BM_GridFourierDirect)->RangeMultiplier(2)->Range(32, 128);

static void BM_MpzMaximalField(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = GridSpec::centered(2, n, 8.0 / static_cast<double>(n));
  const auto xi = GridSpec::centered(2, 32, 0.125);
  const auto f = mpz::smooth_random_signal(x, 2);
  const auto rg = mpz::RGrid::dyadic(x, 4);
  for (auto _ : state) benchmark::DoNotOptimize(mpz::mpz_maximal_field(f, rg, xi));
}
BENCHMARK(BM_MpzMaximalField)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_MaximalRestrictionField(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = GridSpec::centered(2, n, 8.0 / static_cast<double>(n));
  const auto f = mpz::smooth_random_signal(x, 3);
  const auto surf = restr::SampledSurface::parabola();
  const auto dg = restr::DilationGrid::dyadic(2, -2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(restr::maximal_restriction_field(f, surf, restr::MollifierSpec{}, dg));
}
BENCHMARK(BM_MaximalRestrictionField)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_QuadrantIdentity(benchmark::State& state) {
  const std::vector<double> r{0.7, 2.5};
  const std::vector<double> x{0.4, -1.1};
  for (auto _ : state) benchmark::DoNotOptimize(restr::quadrant_identity_check(restr::MollifierSpec{}, r, x));
}
BENCHMARK(BM_QuadrantIdentity)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
