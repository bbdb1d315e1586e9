#include <benchmark/benchmark.h>

#include "annulus/annulus.hpp"

namespace {

using namespace annulus;

// Feasible for every lambda below (the tightest bound, |lambda - 1| = 2, is ~1.66).
const AnnulusPair kAnnuli{1.6, 1.25};

void BM_SolveAlpha(benchmark::State& state) {
  const EnergyParams params{1.0, 1.0, static_cast<double>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(solve_alpha(kAnnuli, params));
}
BENCHMARK(BM_SolveAlpha)->Arg(-1)->Arg(0)->Arg(2)->Arg(3);

void BM_ClosedFormEnergy(benchmark::State& state) {
  const auto s = solve_extremal(kAnnuli, {1.0, 1.0, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(closed_form_energy(s));
}
BENCHMARK(BM_ClosedFormEnergy);

void BM_RadialEnergyQuadrature(benchmark::State& state) {
  const EnergyParams params{1.0, 1.0, 0.0};
  const auto s = solve_extremal(kAnnuli, params);
  const auto map = radial_map(s);
  for (auto _ : state) benchmark::DoNotOptimize(radial_energy(map, kAnnuli, params));
}
BENCHMARK(BM_RadialEnergyQuadrature);

void BM_InverseEnergy(benchmark::State& state) {
  const auto s = solve_extremal(kAnnuli, {1.0, 1.0, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(inverse_energy(s));
}
BENCHMARK(BM_InverseEnergy);

void BM_Shoot(benchmark::State& state) {
  const EnergyParams params{1.0, 1.0, 0.0};
  const double alpha = solve_alpha(kAnnuli, params).alpha;
  for (auto _ : state) benchmark::DoNotOptimize(shoot(alpha, params, kAnnuli.r_domain));
}
BENCHMARK(BM_Shoot);

void BM_Minimize(benchmark::State& state) {
  const auto problem =
      DiscreteProblem::create(kAnnuli, {1.0, 1.0, 0.0}, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(minimize(problem));
}
BENCHMARK(BM_Minimize)->Arg(129)->Arg(513)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
