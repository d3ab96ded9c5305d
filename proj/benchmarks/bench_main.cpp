#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "elflow/banded_matrix.hpp"
#include "elflow/metrics.hpp"
#include "elflow/scheme.hpp"

using namespace elflow;

namespace {

// Interleaved (u, w) system of the geometry step has bandwidth 3/3.
void BM_BandedSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  BandedMatrix a(n, 3, 3);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i >= 3 ? i - 3 : 0; j <= std::min(n - 1, i + 3); ++j) a.at(i, j) = d(rng);
    a.at(i, i) += 8.0;
  }
  std::vector<double> b(n);
  for (double& v : b) v = d(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_banded(a, b));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BandedSolve)->RangeMultiplier(2)->Range(128, 4096)->Complexity(benchmark::oN);

void BM_Step(benchmark::State& state) {
  SchemeConfig cfg;
  cfg.num_elements = static_cast<std::size_t>(state.range(0));
  const Scheme scheme(cfg, problem_from_case(test_case_a()));
  State s = scheme.initial_state();
  for (auto _ : state) {
    s = scheme.step(s);
    benchmark::DoNotOptimize(s.u.values().data());
  }
}
BENCHMARK(BM_Step)->Arg(60)->Arg(200)->Arg(300);

void BM_ErrorSlab(benchmark::State& state) {
  SchemeConfig cfg;
  cfg.num_elements = static_cast<std::size_t>(state.range(0));
  const Scheme scheme(cfg, problem_from_case(test_case_a()));
  const State s0 = scheme.initial_state();
  const State s1 = scheme.step(s0);
  SpacetimeErrorAccumulator acc(test_case_a(), scheme.mesh());
  acc.start(s0);
  for (auto _ : state) {
    acc.add_slab(s0, s1);
  }
}
BENCHMARK(BM_ErrorSlab)->Arg(60)->Arg(200)->Arg(300);

}  // namespace

BENCHMARK_MAIN();
