#ifndef STACKMEC_TESTS_ORACLES_HPP
#define STACKMEC_TESTS_ORACLES_HPP

// Second opinions for the model formulas: everything here is evaluated in
// long double straight from the definitions, without touching the production
// code paths under test. Tests cross-check the library against these.

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <stackmec/economics.hpp>
#include <stackmec/scenario.hpp>
#include <stackmec/vec3.hpp>

namespace oracle {

inline long double rate_bps(long double transmit_power_w, long double dist_m,
                            long double path_loss_exponent,
                            long double bandwidth_hz,
                            long double noise_power_w) {
  const long double gain = std::pow(dist_m, -path_loss_exponent);
  return bandwidth_hz * std::log2(1.0L + transmit_power_w * gain / noise_power_w);
}

/// delta*ln(1+g) - p * (g * 8e6 / r) - eps*(G - g) - lambda*g.
inline long double ue_utility(long double delta, long double eps,
                              long double total_mb, long double local_power_w,
                              long double rate, long double price,
                              long double offload_mb) {
  const long double transmit_seconds = offload_mb * 8e6L / rate;
  return delta * std::log1p(offload_mb) - local_power_w * transmit_seconds -
         eps * (total_mb - offload_mb) - price * offload_mb;
}

/// Direct sum over the link structure: revenue, minus concurrency-scaled
/// compute energy, minus hover power over efficiency per active UAV.
inline long double controller_utility(const stackmec::Scenario& s,
                                      const std::vector<std::vector<int>>& members,
                                      const std::vector<bool>& active,
                                      const std::vector<double>& offload_mb,
                                      const std::vector<double>& price_per_mb) {
  long double total = 0.0L;
  for (std::size_t j = 0; j < members.size(); ++j) {
    if (!active.empty() && !active[j]) continue;
    long double concurrent = 0.0L;
    for (int i : members[j]) {
      if (offload_mb[i] > 0.0) concurrent += 1.0L;
    }
    const stackmec::UavProfile& uav = s.uavs[j];
    for (int i : members[j]) {
      const long double g = offload_mb[i];
      total += static_cast<long double>(price_per_mb[i]) * g;
      total -= static_cast<long double>(uav.compute_power_w) *
               s.channel.encode_cycles_per_byte * 1e6L * g * concurrent /
               uav.compute_capacity_cps;
    }
    total -= static_cast<long double>(uav.hover_power_w) / uav.power_efficiency;
  }
  return total;
}

struct GridMax {
  double arg = 0.0;
  double value = -std::numeric_limits<double>::infinity();
};

/// Coarse scan of f over [lo, hi] with `points` samples, then `refine_rounds`
/// zoomed rescans of one coarse step around the incumbent. Resolution after r
/// rounds is (hi-lo) * (2/(points-1))^r; both interval endpoints are sampled
/// exactly on the first pass.
inline GridMax grid_argmax(const std::function<double(double)>& f, double lo,
                           double hi, int points, int refine_rounds = 2) {
  GridMax best;
  double a = lo;
  double b = hi;
  for (int round = 0; round <= refine_rounds; ++round) {
    const double step = (b - a) / (points - 1);
    for (int t = 0; t < points; ++t) {
      const double x = (t == points - 1) ? b : a + step * t;
      const double v = f(x);
      if (v > best.value) {
        best.arg = x;
        best.value = v;
      }
    }
    a = std::max(lo, best.arg - step);
    b = std::min(hi, best.arg + step);
    if (!(a < b)) break;
  }
  return best;
}

// ---- fixture builders -------------------------------------------------------

inline stackmec::UeProfile make_ue(int id, double x, double y, double total_mb,
                                   double transmit_w, double local_w,
                                   double unit_energy, double delta) {
  stackmec::UeProfile ue;
  ue.id = id;
  ue.position = {x, y, 0.0};
  ue.total_data_mb = total_mb;
  ue.transmit_power_w = transmit_w;
  ue.local_power_w = local_w;
  ue.unit_energy_j_per_mb = unit_energy;
  ue.satisfaction_coeff = delta;
  return ue;
}

inline stackmec::UavProfile make_uav(int id, double x, double y, double z,
                                     double capacity_cps, double compute_w,
                                     double hover_w, double efficiency,
                                     double budget_j, double data_cap_mb) {
  stackmec::UavProfile uav;
  uav.id = id;
  uav.position = {x, y, z};
  uav.compute_capacity_cps = capacity_cps;
  uav.compute_power_w = compute_w;
  uav.hover_power_w = hover_w;
  uav.power_efficiency = efficiency;
  uav.energy_budget_j = budget_j;
  uav.data_capacity_mb = data_cap_mb;
  return uav;
}

/// Rate that makes the per-MB transmission energy equal `cost`: r = p*8e6/cost.
inline double rate_for_transmit_cost(double local_power_w, double cost) {
  return local_power_w * 8e6 / cost;
}

}  // namespace oracle

#endif  // STACKMEC_TESTS_ORACLES_HPP
