#include <benchmark/benchmark.h>

#include <vector>

#include "dyadic/bellman.hpp"
#include "dyadic/characteristics.hpp"
#include "dyadic/search.hpp"
#include "dyadic/verifier.hpp"

namespace {

using namespace dyadic;

void BM_UBranchMinus(benchmark::State& state) {
  const double p = 2.0;
  double t = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(u_branch(t, p, Branch::Minus));
    t = t < 0.99 ? t + 0.01 : 0.01;
  }
}
BENCHMARK(BM_UBranchMinus);

void BM_BMax(benchmark::State& state) {
  const BellmanParams params = make_params(2.0, 1.2, 2.0);
  const double q = -0.5;
  double x2 = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(b_max({1.0, x2}, q, params));
    x2 = x2 < 1.6 ? x2 + 0.01 : 1.0;
  }
}
BENCHMARK(BM_BMax);

void BM_Profile(benchmark::State& state) {
  SearchConfig config;
  config.depth = static_cast<int>(state.range(0));
  const DyadicWeight w = sample_weight(config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(profile(w, 2.0, 2.0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(w.node_count()));
}
BENCHMARK(BM_Profile)->RangeMultiplier(4)->Range(4, 16);

void BM_VerifyTheorem(benchmark::State& state) {
  SearchConfig config;
  config.depth = static_cast<int>(state.range(0));
  const DyadicWeight w = sample_weight(config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_theorem(w, 2.0, -0.5));
  }
}
BENCHMARK(BM_VerifyTheorem)->DenseRange(2, 10, 4);

}  // namespace
BENCHMARK_MAIN();
