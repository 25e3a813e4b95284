#include <algorithm>
#include <chrono>
#include <random>

#include "stackmec/channel.hpp"
#include "stackmec/errors.hpp"
#include "stackmec/game.hpp"
#include "stackmec/rng.hpp"
#include "stackmec/solver.hpp"
#include "solver_detail.hpp"

namespace stackmec {
namespace detail {

SolveReport one_shot_solve(Algorithm kind, const Scenario& s,
                           const SolverConfig& cfg, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const int I = s.ue_count();

  SolveReport report;
  report.algorithm = kind;
  report.seed = seed;

  Deployment d = predeploy(s, cfg, seed);

  StrategyProfile prof;
  prof.offload_mb.assign(I, 0.0);
  prof.price_per_mb.assign(I, 0.0);
  std::vector<bool> clamped(I, false);

  if (kind == Algorithm::Osrs) {
    // Random prices, best-responding followers.
    std::mt19937_64 gen(mix_seed(seed, kStreamOsrs));
    for (int i = 0; i < I; ++i) {
      if (d.serving[i] < 0) continue;
      const PriceBounds b = price_bounds(s.ues[i], d.rate_bps[i]);
      prof.price_per_mb[i] = uniform_in(gen, b.lambda_min, b.lambda_max);
      prof.offload_mb[i] =
          optimal_offload(s.ues[i], prof.price_per_mb[i], d.rate_bps[i]);
    }
  } else {
    // Psrs: closed-form prices, random offload fractions. The leader
    // anticipates every cluster member offloading (M = cluster size).
    std::mt19937_64 gen(mix_seed(seed, kStreamPsrs));
    for (int i = 0; i < I; ++i) {
      if (d.serving[i] < 0) continue;
      const UeProfile& ue = s.ues[i];
      const int j = d.serving[i];
      const int m = static_cast<int>(d.assignment.cluster_members[j].size());
      const PriceBounds b = price_bounds(ue, d.rate_bps[i]);
      double lambda;
      try {
        lambda = optimal_price(ue, d.rate_bps[i], m, s.uavs[j], s.channel);
      } catch (const DegenerateEconomicsError&) {
        // Interior analysis void: compare the anticipated boundary payoffs
        // (lambda_min - K) * G versus 0 at lambda_max.
        const double k = compute_energy_per_mb(s.uavs[j], s.channel, m);
        lambda = (b.lambda_min - k) * ue.total_data_mb > 0.0 ? b.lambda_min
                                                             : b.lambda_max;
      }
      prof.price_per_mb[i] = lambda;
      prof.offload_mb[i] = uniform_double(gen) * ue.total_data_mb;
      clamped[i] = lambda == b.lambda_min || lambda == b.lambda_max;
    }
  }

  append_record(report, 1, prof, d.assignment, s, 0.0, clamped);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  finalize_report(report, prof, d.assignment, s, cfg,
                  /*change_below_tolerance=*/false, wall);
  return report;
}

}  // namespace detail

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Cppo:
      return "cppo";
    case Algorithm::NuCppo:
      return "nu-cppo";
    case Algorithm::Osrs:
      return "osrs";
    case Algorithm::Psrs:
      return "psrs";
    case Algorithm::Pso:
      return "pso";
    case Algorithm::Gd:
      return "gd";
  }
  return "unknown";
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "cppo") return Algorithm::Cppo;
  if (name == "nu-cppo" || name == "nu_cppo") return Algorithm::NuCppo;
  if (name == "osrs") return Algorithm::Osrs;
  if (name == "psrs") return Algorithm::Psrs;
  if (name == "pso") return Algorithm::Pso;
  if (name == "gd") return Algorithm::Gd;
  throw ConfigError("unknown algorithm '" + name +
                    "' (expected cppo, nu-cppo, osrs, psrs, pso, or gd)");
}

SolveReport solve_baseline(Algorithm kind, const Scenario& s,
                           const SolverConfig& cfg, std::uint64_t seed) {
  switch (kind) {
    case Algorithm::Osrs:
    case Algorithm::Psrs:
      return detail::one_shot_solve(kind, s, cfg, seed);
    default:
      return detail::loop_solve(kind, s, cfg, seed);
  }
}

}  // namespace stackmec
