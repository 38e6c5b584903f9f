#include <benchmark/benchmark.h>

#include <numbers>

#include "jetcheck/numerics.hpp"

namespace {

using jetcheck::Grid;
using jetcheck::NlseParams;

void BM_Rk4Step(benchmark::State& state) {
  const Grid g(2 * std::numbers::pi, static_cast<int>(state.range(0)));
  const NlseParams p{};
  const auto s = jetcheck::plane_wave(g, 0.5, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(jetcheck::step_rk4(s, g, p, 1e-5));
}
BENCHMARK(BM_Rk4Step)->Arg(64)->Arg(256)->Arg(1024);

void BM_LawsonStep(benchmark::State& state) {
  const Grid g(2 * std::numbers::pi, static_cast<int>(state.range(0)));
  const jetcheck::LawsonStepper st(g, NlseParams{}, 1e-3);
  const auto s = jetcheck::plane_wave(g, 0.5, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(st.step(s));
}
BENCHMARK(BM_LawsonStep)->Arg(64)->Arg(256)->Arg(1024);

}  // namespace
