#include <benchmark/benchmark.h>

#include "jetcheck/conservation.hpp"
#include "jetcheck/problem.hpp"
#include "jetcheck/symmetry.hpp"

namespace {

const jetcheck::Problem& problem() {
  static const jetcheck::Problem p = jetcheck::load_problem(JETCHECK_DATA_FILE);
  return p;
}

void BM_DivergenceMatchT4(benchmark::State& state) {
  const auto& p = problem();
  for (auto _ : state) {
    benchmark::DoNotOptimize(jetcheck::divergence_match(p.conserved[3], p.multipliers[3], p.system));
  }
}
BENCHMARK(BM_DivergenceMatchT4)->Unit(benchmark::kMillisecond);

void BM_MultiplierConditions(benchmark::State& state) {
  const auto& p = problem();
  for (auto _ : state) {
    for (const auto& m : p.multipliers) benchmark::DoNotOptimize(jetcheck::multiplier_condition(m, p.system));
  }
}
BENCHMARK(BM_MultiplierConditions)->Unit(benchmark::kMillisecond);

void BM_SymmetryInvariance(benchmark::State& state) {
  const auto& p = problem();
  for (auto _ : state) {
    for (const auto& X : p.symmetries) benchmark::DoNotOptimize(jetcheck::symmetry_invariance(X, p.system));
  }
}
BENCHMARK(BM_SymmetryInvariance)->Unit(benchmark::kMillisecond);

}  // namespace
