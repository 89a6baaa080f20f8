#include <algorithm>
#include <numeric>
#include <random>

#include <benchmark/benchmark.h>

#include "maxtrunc/christ_kiselev.hpp"
#include "maxtrunc/operator_norm.hpp"

using namespace maxtrunc;

namespace {

struct Setup {
  Kernel kernel;
  ck::ChainSystem sys;
  Signal f;
};

Setup make_setup(std::size_t factor, std::size_t d, std::size_t codomain) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::vector<std::size_t> factors(d, factor);
  std::size_t n = 1;
  for (auto s : factors) n *= s;
  const auto dom = WeightedSpace::uniform(n);
  const auto cod = WeightedSpace::uniform(codomain);
  std::vector<cdouble> e(n * codomain), v(n);
  for (auto& z : e) z = cdouble(g(rng), g(rng));
  for (auto& z : v) z = cdouble(g(rng), g(rng));
  std::vector<ck::Chain> chains;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<std::size_t> cuts(factor);
    std::iota(cuts.begin(), cuts.end(), 1);
    chains.push_back(ck::Chain::prefixes(factor, cuts));
  }
  return {Kernel(dom, cod, std::move(e)), ck::ChainSystem(factors, std::move(chains)), Signal(dom, std::move(v))};
}

}  // namespace

static void BM_MaximalTruncation(benchmark::State& state) {
  const auto s = make_setup(static_cast<std::size_t>(state.range(0)), 2, 8);
  for (auto _ : state) benchmark::DoNotOptimize(ck::maximal_truncation(s.kernel, s.sys, s.f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MaximalTruncation)->RangeMultiplier(2)->Range(2, 16);

static void BM_Certificate(benchmark::State& state) {
  const auto s = make_setup(4, static_cast<std::size_t>(state.range(0)), 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ck::build_ck_certificate(s.kernel, s.sys, s.f, Exponent(2.0), Exponent(4.0)));
  }
}
BENCHMARK(BM_Certificate)->DenseRange(1, 2);

static void BM_AscentMaximalOperator(benchmark::State& state) {
  const auto s = make_setup(4, 2, 8);
  const ck::MaximalTruncationOperator op(s.kernel, s.sys);
  AscentConfig cfg;
  cfg.restarts = 4;
  cfg.steps = 100;
  for (auto _ : state) benchmark::DoNotOptimize(norm_lower_bound_ascent(op, Exponent(2.0), Exponent(4.0), cfg));
}
BENCHMARK(BM_AscentMaximalOperator)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
