#include "stackmec/game.hpp"

#include <algorithm>
#include <cmath>

#include "stackmec/channel.hpp"
#include "stackmec/errors.hpp"

namespace stackmec {

// The closed forms below work in J/MB: the "p/r" of the utility analysis is
// the transmission energy per megabyte, p * 8e6 / r.

PriceBounds price_bounds(const UeProfile& ue, double rate_bps) {
  const double a = transmit_energy_per_mb(ue, rate_bps) - ue.unit_energy_j_per_mb;
  PriceBounds b;
  b.lambda_min = ue.satisfaction_coeff / (1.0 + ue.total_data_mb) - a;
  b.lambda_max = ue.satisfaction_coeff - a;
  return b;
}

double optimal_offload(const UeProfile& ue, double price_per_mb, double rate_bps) {
  const PriceBounds b = price_bounds(ue, rate_bps);
  if (price_per_mb <= b.lambda_min) return ue.total_data_mb;
  if (price_per_mb >= b.lambda_max) return 0.0;
  const double a = transmit_energy_per_mb(ue, rate_bps) - ue.unit_energy_j_per_mb;
  // a + lambda > 0 on the open interval: lambda > lambda_min = delta/(1+G) - a.
  const double g = ue.satisfaction_coeff / (a + price_per_mb) - 1.0;
  return std::clamp(g, 0.0, ue.total_data_mb);
}

PriceSolution optimal_price_solution(const UeProfile& ue, double rate_bps,
                                     int concurrent, const UavProfile& uav,
                                     const ChannelConstants& c) {
  const double a = transmit_energy_per_mb(ue, rate_bps) - ue.unit_energy_j_per_mb;
  const double k = compute_energy_per_mb(uav, c, concurrent);
  const double radicand = ue.satisfaction_coeff * (a + k);
  if (radicand < 0.0) {
    throw DegenerateEconomicsError(
        "negative radicand in the interior price formula (per-MB transmission "
        "cost below local-energy savings net of compute cost)");
  }
  const PriceBounds b = price_bounds(ue, rate_bps);
  const double interior = std::sqrt(radicand) - a;
  PriceSolution sol;
  sol.price = std::clamp(interior, b.lambda_min, b.lambda_max);
  sol.clamped = interior < b.lambda_min || interior > b.lambda_max;
  return sol;
}

double optimal_price(const UeProfile& ue, double rate_bps, int concurrent,
                     const UavProfile& uav, const ChannelConstants& c) {
  return optimal_price_solution(ue, rate_bps, concurrent, uav, c).price;
}

EquilibriumCertificate verify_equilibrium(const StrategyProfile& profile,
                                          const Assignment& a, const Scenario& s,
                                          const VerifyOptions& opts) {
  const int I = s.ue_count();
  const std::vector<int> serving = a.serving_uav(I);

  std::vector<double> rate(I, 0.0);
  for (int i = 0; i < I; ++i) {
    if (serving[i] >= 0) {
      rate[i] = uplink_rate_bps(s.ues[i], a.uav_positions[serving[i]], s.channel);
    }
  }

  EquilibriumCertificate cert;
  cert.profile = profile;
  cert.tolerance = opts.relative_tolerance;
  bool all_within = true;

  // Follower side: each UE sweeps its own offload, everything else fixed.
  // Other UEs' utilities do not depend on g_i, so a scalar evaluation suffices.
  for (int i = 0; i < I; ++i) {
    if (serving[i] < 0) continue;  // no link, no strategy to deviate
    const UeProfile& ue = s.ues[i];
    const double current =
        ue_utility(ue, profile.offload_mb[i], profile.price_per_mb[i], rate[i]);
    double best = current;
    const int n = opts.offload_grid_points;
    for (int t = 0; t < n; ++t) {
      // The last point is G exactly; the scaled form can spill past G by 1 ulp.
      const double g =
          t == n - 1 ? ue.total_data_mb : ue.total_data_mb * t / (n - 1);
      best = std::max(best, ue_utility(ue, g, profile.price_per_mb[i], rate[i]));
    }
    const double gain = best - current;
    cert.max_ue_gain = std::max(cert.max_ue_gain, gain);
    if (gain > opts.relative_tolerance * std::max(1.0, std::abs(current))) {
      all_within = false;
    }
  }

  // Leader side: each price sweeps its interval with UE i re-best-responding;
  // the full controller utility is re-evaluated because M_j (and with it every
  // cluster member's compute cost) can change when g_i crosses zero.
  const double u_con = controller_utility(profile, a, s);
  for (int i = 0; i < I; ++i) {
    if (serving[i] < 0) continue;
    const PriceBounds b = price_bounds(s.ues[i], rate[i]);
    StrategyProfile trial = profile;
    double best = u_con;
    const int n = opts.price_grid_points;
    for (int t = 0; t < n; ++t) {
      const double lambda = b.lambda_min + (b.lambda_max - b.lambda_min) * t / (n - 1);
      trial.price_per_mb[i] = lambda;
      trial.offload_mb[i] = optimal_offload(s.ues[i], lambda, rate[i]);
      best = std::max(best, controller_utility(trial, a, s));
    }
    cert.max_controller_gain = std::max(cert.max_controller_gain, best - u_con);
  }
  if (cert.max_controller_gain >
      opts.relative_tolerance * std::max(1.0, std::abs(u_con))) {
    all_within = false;
  }

  cert.certified = all_within;
  return cert;
}

}  // namespace stackmec
