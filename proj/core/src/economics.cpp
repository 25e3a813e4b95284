#include "stackmec/economics.hpp"

#include <cmath>
#include <utility>

#include "stackmec/channel.hpp"
#include "stackmec/errors.hpp"

namespace stackmec {

Assignment Assignment::from_members(std::vector<std::vector<int>> members,
                                    std::vector<Vec3> positions) {
  Assignment a;
  a.cluster_members = std::move(members);
  a.uav_positions = std::move(positions);
  a.uav_active.assign(a.cluster_members.size(), true);
  return a;
}

std::vector<int> Assignment::serving_uav(int ue_count) const {
  std::vector<int> serving(ue_count, -1);
  for (int j = 0; j < uav_count(); ++j) {
    for (int i : cluster_members[j]) {
      if (i < 0 || i >= ue_count) {
        throw StructuralError("cluster member index out of range");
      }
      if (serving[i] != -1) {
        throw StructuralError("UE " + std::to_string(i) +
                              " linked to more than one UAV");
      }
      serving[i] = j;
    }
  }
  return serving;
}

std::vector<std::vector<int>> Assignment::link_matrix(int ue_count) const {
  const std::vector<int> serving = serving_uav(ue_count);
  std::vector<std::vector<int>> x(ue_count, std::vector<int>(uav_count(), 0));
  for (int i = 0; i < ue_count; ++i) {
    if (serving[i] >= 0) x[i][serving[i]] = 1;
  }
  return x;
}

double transmit_energy_per_mb(const UeProfile& ue, double rate_bps) {
  return ue.local_power_w * kBitsPerMegabyte / rate_bps;
}

double compute_energy_per_mb(const UavProfile& uav, const ChannelConstants& c,
                             int concurrent) {
  return uav.compute_power_w * c.encode_cycles_per_byte * kBytesPerMegabyte *
         concurrent / uav.compute_capacity_cps;
}

double ue_utility(const UeProfile& ue, double offload_mb, double price_per_mb,
                  double rate_bps) {
  if (offload_mb < 0.0 || offload_mb > ue.total_data_mb) {
    throw Error("offload outside [0, G]");
  }
  const double satisfaction = ue.satisfaction_coeff * std::log1p(offload_mb);
  const double e_trans = transmit_energy_per_mb(ue, rate_bps) * offload_mb;
  const double e_local = ue.unit_energy_j_per_mb * (ue.total_data_mb - offload_mb);
  const double payment = price_per_mb * offload_mb;
  return satisfaction - e_trans - e_local - payment;
}

std::vector<int> offloading_counts(const Assignment& a,
                                   const std::vector<double>& offload_mb) {
  std::vector<int> counts(a.uav_count(), 0);
  for (int j = 0; j < a.uav_count(); ++j) {
    for (int i : a.cluster_members[j]) {
      if (offload_mb[i] > 0.0) ++counts[j];
    }
  }
  return counts;
}

UtilityBreakdown evaluate(const StrategyProfile& profile, const Assignment& a,
                          const Scenario& s) {
  const int I = s.ue_count();
  const std::vector<int> serving = a.serving_uav(I);  // validates structure
  const std::vector<int> m = offloading_counts(a, profile.offload_mb);

  UtilityBreakdown b;
  b.ues.resize(I);
  b.uavs.resize(a.uav_count());

  for (int i = 0; i < I; ++i) {
    const UeProfile& ue = s.ues[i];
    const double g = profile.offload_mb[i];
    const double lambda = profile.price_per_mb[i];
    UeBreakdown& ub = b.ues[i];

    if (serving[i] < 0 && g > 0.0) {
      throw StructuralError("UE " + std::to_string(i) + " offloads without a link");
    }
    ub.satisfaction = ue.satisfaction_coeff * std::log1p(g);
    ub.local_energy_j = ue.unit_energy_j_per_mb * (ue.total_data_mb - g);
    if (serving[i] >= 0 && g > 0.0) {
      const double r = uplink_rate_bps(ue, a.uav_positions[serving[i]], s.channel);
      ub.transmission_energy_j = transmit_energy_per_mb(ue, r) * g;
      ub.payment = lambda * g;
    }
    ub.utility =
        ub.satisfaction - ub.transmission_energy_j - ub.local_energy_j - ub.payment;
    b.mean_ue_utility += ub.utility;
    b.revenue += ub.payment;
  }
  b.mean_ue_utility /= I;

  for (int j = 0; j < a.uav_count(); ++j) {
    if (!a.uav_active.empty() && !a.uav_active[j]) continue;  // withdrawn: no cost
    const UavProfile& uav = s.uavs[j];
    UavBreakdown& vb = b.uavs[j];
    const double e_per_mb = compute_energy_per_mb(uav, s.channel, m[j]);
    for (int i : a.cluster_members[j]) {
      vb.compute_energy_j += e_per_mb * profile.offload_mb[i];
    }
    vb.hover_energy_j = uav.hover_power_w / uav.power_efficiency;
    b.total_cost += vb.compute_energy_j + vb.hover_energy_j;
  }

  b.controller_utility = b.revenue - b.total_cost;
  return b;
}

double controller_utility(const StrategyProfile& profile, const Assignment& a,
                          const Scenario& s) {
  return evaluate(profile, a, s).controller_utility;
}

std::vector<bool> energy_feasible(const Assignment& a,
                                  const StrategyProfile& profile,
                                  const Scenario& s) {
  const UtilityBreakdown b = evaluate(profile, a, s);
  std::vector<bool> ok(a.uav_count(), true);
  for (int j = 0; j < a.uav_count(); ++j) {
    if (!a.uav_active.empty() && !a.uav_active[j]) continue;
    const double drawn = b.uavs[j].compute_energy_j + b.uavs[j].hover_energy_j;
    ok[j] = drawn <= s.uavs[j].energy_budget_j;
  }
  return ok;
}

}  // namespace stackmec
