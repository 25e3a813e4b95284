#include "stackmec/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

#include "stackmec/channel.hpp"
#include "stackmec/errors.hpp"
#include "stackmec/rng.hpp"
#include "stackmec/ular.hpp"
#include "solver_detail.hpp"

namespace stackmec {
namespace detail {

Deployment predeploy(const Scenario& s, const SolverConfig& cfg,
                     std::uint64_t seed) {
  const Clustering clustering =
      kmeans_place(s, mix_seed(seed, kStreamKmeans), cfg.kmeans_max_iterations);
  std::vector<double> capacity(s.uav_count());
  for (int j = 0; j < s.uav_count(); ++j) {
    capacity[j] = s.uavs[j].data_capacity_mb;
  }
  Deployment d;
  d.assignment = capacity_rebalance(s, clustering,
                                    std::vector<double>(s.ue_count(), 0.0),
                                    capacity);
  refresh_links(d, s);
  return d;
}

void refresh_links(Deployment& d, const Scenario& s) {
  d.serving = d.assignment.serving_uav(s.ue_count());
  d.rate_bps.assign(s.ue_count(), 0.0);
  for (int i = 0; i < s.ue_count(); ++i) {
    if (d.serving[i] >= 0) {
      d.rate_bps[i] = uplink_rate_bps(s.ues[i], d.assignment.uav_positions[d.serving[i]],
                                      s.channel);
    }
  }
}

std::vector<int> anticipated_concurrency(const Assignment& a,
                                         const std::vector<int>& serving,
                                         const std::vector<double>& offload_mb,
                                         int ue_count) {
  const std::vector<int> counts = offloading_counts(a, offload_mb);
  std::vector<int> m(ue_count, 1);
  for (int i = 0; i < ue_count; ++i) {
    if (serving[i] < 0) continue;
    const int others = counts[serving[i]] - (offload_mb[i] > 0.0 ? 1 : 0);
    m[i] = others + 1;
  }
  return m;
}

void append_record(SolveReport& report, int iteration,
                   const StrategyProfile& profile, const Assignment& a,
                   const Scenario& s, double max_change,
                   const std::vector<bool>& clamped) {
  const UtilityBreakdown b = evaluate(profile, a, s);
  IterationRecord rec;
  rec.iteration = iteration;
  rec.price_per_mb = profile.price_per_mb;
  rec.offload_mb = profile.offload_mb;
  rec.controller_utility = b.controller_utility;
  rec.mean_ue_utility = b.mean_ue_utility;
  rec.max_strategy_change = max_change;
  rec.cluster_members = a.cluster_members;
  rec.price_clamped = clamped;
  rec.uav_available = a.uav_active;
  report.iterations.push_back(std::move(rec));
}

void finalize_report(SolveReport& report, const StrategyProfile& profile,
                     const Assignment& a, const Scenario& s,
                     const SolverConfig& cfg, bool change_below_tolerance,
                     double wall_time_s) {
  report.outer_iterations = static_cast<int>(report.iterations.size());
  report.final_profile = profile;
  report.final_assignment = a;
  report.final_breakdown = evaluate(profile, a, s);
  report.certificate = verify_equilibrium(profile, a, s, cfg.verify);
  report.converged = change_below_tolerance && report.certificate.certified;
  report.wall_time_s = wall_time_s;
}

namespace {

/// Projected gradient ascent on the leader's single-UE objective
/// F(lambda) = (lambda - K) * g*(lambda), using the analytic interior
/// derivative  dF/dlambda = delta*(a + K)/(a + lambda)^2 - 1. Fixed step,
/// best-visited point returned; per-step values exposed for the comparators.
double gd_maximize(const UeProfile& ue, double rate_bps, double k_per_mb,
                   const PriceBounds& bounds, double step_fraction, int iterations,
                   std::vector<double>* value_history = nullptr) {
  const double a = transmit_energy_per_mb(ue, rate_bps) - ue.unit_energy_j_per_mb;
  const auto value = [&](double lambda) {
    return (lambda - k_per_mb) * optimal_offload(ue, lambda, rate_bps);
  };
  const double width = bounds.lambda_max - bounds.lambda_min;
  const double step = step_fraction * width;

  double lambda = 0.5 * (bounds.lambda_min + bounds.lambda_max);
  double best_lambda = lambda;
  double best_value = value(lambda);
  if (value_history) value_history->push_back(best_value);
  for (int t = 0; t < iterations; ++t) {
    const double denom = a + lambda;  // >= delta/(1+G) > 0 inside the box
    const double grad =
        ue.satisfaction_coeff * (a + k_per_mb) / (denom * denom) - 1.0;
    lambda = std::clamp(lambda + step * grad, bounds.lambda_min, bounds.lambda_max);
    const double v = value(lambda);
    if (v > best_value) {
      best_value = v;
      best_lambda = lambda;
    }
    if (value_history) value_history->push_back(best_value);
  }
  return best_lambda;
}

}  // namespace

SolveReport loop_solve(Algorithm kind, const Scenario& s, const SolverConfig& cfg,
                       std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const int I = s.ue_count();
  const bool rebalance_each_iteration = kind != Algorithm::NuCppo;

  SolveReport report;
  report.algorithm = kind;
  report.seed = seed;

  Deployment d = predeploy(s, cfg, seed);

  StrategyProfile prof;
  prof.offload_mb.assign(I, 0.0);
  prof.price_per_mb.assign(I, 0.0);
  for (int i = 0; i < I; ++i) {
    if (d.serving[i] >= 0) {
      prof.price_per_mb[i] = price_bounds(s.ues[i], d.rate_bps[i]).lambda_max;
    }
  }

  bool below_tolerance = false;
  for (int iter = 1; iter <= cfg.max_outer; ++iter) {
    const StrategyProfile prev = prof;
    const std::vector<int> m_hat =
        anticipated_concurrency(d.assignment, d.serving, prev.offload_mb, I);

    std::vector<bool> clamped(I, false);
    for (int i = 0; i < I; ++i) {
      if (d.serving[i] < 0) continue;
      const UeProfile& ue = s.ues[i];
      const double rate = d.rate_bps[i];
      const PriceBounds bounds = price_bounds(ue, rate);
      const double k =
          compute_energy_per_mb(s.uavs[d.serving[i]], s.channel, m_hat[i]);

      double lambda;
      if (kind == Algorithm::Gd) {
        lambda = gd_maximize(ue, rate, k, bounds, cfg.gd_step_fraction,
                             cfg.pso.inner_iterations);
      } else {
        PsoConfig inner = cfg.pso;
        inner.bounds = {{bounds.lambda_min, bounds.lambda_max}};
        inner.adaptive = kind != Algorithm::Pso;
        const auto objective = [&](const std::vector<double>& x) {
          return (x[0] - k) * optimal_offload(ue, x[0], rate);
        };
        lambda = psopssl_maximize(objective, inner,
                                  mix_seed(seed, kStreamInnerBase + i))
                     .best_position[0];
      }
      prof.price_per_mb[i] = lambda;
      prof.offload_mb[i] = optimal_offload(ue, lambda, rate);
      clamped[i] = lambda == bounds.lambda_min || lambda == bounds.lambda_max;
    }

    if (rebalance_each_iteration) {
      std::vector<double> capacity(s.uav_count());
      for (int j = 0; j < s.uav_count(); ++j) {
        capacity[j] = s.uavs[j].data_capacity_mb;
      }
      d.assignment =
          capacity_rebalance(s, to_clustering(d.assignment), prof.offload_mb,
                             capacity, d.assignment.uav_active);
      const AvailabilityResponse resp =
          respond_availability(d.assignment, prof, s);
      d.assignment = resp.assignment;
      refresh_links(d, s);
    }

    double change = 0.0;
    for (int i = 0; i < I; ++i) {
      change = std::max(change,
                        std::abs(prof.price_per_mb[i] - prev.price_per_mb[i]));
      change =
          std::max(change, std::abs(prof.offload_mb[i] - prev.offload_mb[i]));
    }
    append_record(report, iter, prof, d.assignment, s, change, clamped);

    if (change < cfg.tolerance) {
      below_tolerance = true;
      break;
    }
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  finalize_report(report, prof, d.assignment, s, cfg, below_tolerance, wall);
  return report;
}

}  // namespace detail

SolveReport cppo_solve(const Scenario& s, const SolverConfig& cfg,
                       std::uint64_t seed) {
  return detail::loop_solve(Algorithm::Cppo, s, cfg, seed);
}

}  // namespace stackmec
