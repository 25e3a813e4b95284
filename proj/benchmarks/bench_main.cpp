// Microbenchmarks for the hot paths: utility evaluation, the inner optimizer,
// placement, and a full equilibrium solve on a small instance.

#include <benchmark/benchmark.h>

#include "stackmec/economics.hpp"
#include "stackmec/game.hpp"
#include "stackmec/scenario.hpp"
#include "stackmec/solver.hpp"
#include "stackmec/ular.hpp"

namespace {

stackmec::Scenario default_scenario(int ues, int uavs, std::uint64_t seed) {
  stackmec::GenerationConfig cfg;
  cfg.ue_count = ues;
  cfg.uav_count = uavs;
  return stackmec::generate(cfg, seed);
}

void BM_Evaluate(benchmark::State& state) {
  const stackmec::Scenario s = default_scenario(20, 3, 7);
  const stackmec::Clustering c = stackmec::kmeans_place(s, 7);
  stackmec::Assignment a = stackmec::Assignment::from_members(c.members, c.centroids);
  stackmec::StrategyProfile prof;
  prof.offload_mb.assign(20, 5.0);
  prof.price_per_mb.assign(20, 10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stackmec::evaluate(prof, a, s));
  }
}
BENCHMARK(BM_Evaluate);

void BM_KmeansPlace(benchmark::State& state) {
  const stackmec::Scenario s =
      default_scenario(static_cast<int>(state.range(0)), 5, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stackmec::kmeans_place(s, 11));
  }
}
BENCHMARK(BM_KmeansPlace)->Arg(50)->Arg(200);

void BM_PsopsslInner(benchmark::State& state) {
  // A representative 1-D concave leader objective.
  const stackmec::Scenario s = default_scenario(1, 1, 3);
  const stackmec::UeProfile& ue = s.ues[0];
  const double rate = 5e6;
  const stackmec::PriceBounds b = stackmec::price_bounds(ue, rate);
  stackmec::PsoConfig cfg;
  cfg.bounds = {{b.lambda_min, b.lambda_max}};
  const auto objective = [&](const std::vector<double>& x) {
    return (x[0] - 0.1) * stackmec::optimal_offload(ue, x[0], rate);
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(stackmec::psopssl_maximize(objective, cfg, 42));
  }
}
BENCHMARK(BM_PsopsslInner);

void BM_CppoSolve(benchmark::State& state) {
  const stackmec::Scenario s = default_scenario(20, 3, 5);
  stackmec::SolverConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(stackmec::cppo_solve(s, cfg, 5));
  }
}
BENCHMARK(BM_CppoSolve);

void BM_VerifyEquilibrium(benchmark::State& state) {
  const stackmec::Scenario s = default_scenario(20, 3, 5);
  stackmec::SolverConfig cfg;
  const stackmec::SolveReport report = stackmec::cppo_solve(s, cfg, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stackmec::verify_equilibrium(
        report.final_profile, report.final_assignment, s));
  }
}
BENCHMARK(BM_VerifyEquilibrium);

}  // namespace

BENCHMARK_MAIN();
