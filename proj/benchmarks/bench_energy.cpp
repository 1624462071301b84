#include <benchmark/benchmark.h>

#include "nlvar/energy.hpp"
#include "nlvar/optimality.hpp"
#include "nlvar/solver.hpp"

namespace {

nlvar::NodalFunction square_profile(int n) {
  return nlvar::sample(nlvar::Grid1D(n), [](double x) { return x * x; });
}

void BM_Energy(benchmark::State& state) {
  const auto u = square_profile(static_cast<int>(state.range(0)));
  const auto I = nlvar::two_well_full();
  for (auto _ : state) benchmark::DoNotOptimize(nlvar::energy(u, I).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Energy)->RangeMultiplier(2)->Range(32, 512)->Complexity(benchmark::oNSquared);

void BM_EnergyGradient(benchmark::State& state) {
  const auto u = square_profile(static_cast<int>(state.range(0)));
  const auto I = nlvar::two_well_full();
  for (auto _ : state) benchmark::DoNotOptimize(nlvar::energy_gradient(u, I));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EnergyGradient)->RangeMultiplier(2)->Range(32, 512)->Complexity(benchmark::oNSquared);

void BM_ResidualReport(benchmark::State& state) {
  const auto u = square_profile(static_cast<int>(state.range(0)));
  const auto I = nlvar::half_square();
  for (auto _ : state) benchmark::DoNotOptimize(nlvar::residual_report(u, I).norm_l2);
}
BENCHMARK(BM_ResidualReport)->RangeMultiplier(2)->Range(32, 512);

void BM_MinimizeProblem1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto I = nlvar::half_square();
  const nlvar::Grid1D grid(n);
  for (auto _ : state) {
    auto r = nlvar::minimize(I, grid, {0.0, 1.0}, nlvar::InitPolicy::Linear,
                             nlvar::default_solver_config(n));
    benchmark::DoNotOptimize(r.energy);
  }
}
BENCHMARK(BM_MinimizeProblem1)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
