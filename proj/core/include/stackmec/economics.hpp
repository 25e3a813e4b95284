#ifndef STACKMEC_ECONOMICS_HPP
#define STACKMEC_ECONOMICS_HPP

#include <vector>

#include "stackmec/scenario.hpp"
#include "stackmec/vec3.hpp"

namespace stackmec {

// Unit canon: offload sizes are megabytes everywhere. Radio formulas convert
// MB to bits, CPU formulas convert MB to bytes before applying the
// cycles-per-byte coefficient.
inline constexpr double kBitsPerMegabyte = 8e6;
inline constexpr double kBytesPerMegabyte = 1e6;

/// Leader prices and follower offloads, indexed by UE id.
struct StrategyProfile {
  std::vector<double> offload_mb;    ///< g_i, in [0, G_i]
  std::vector<double> price_per_mb;  ///< lambda_i

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
};

/// UE-to-UAV link structure. cluster_members is the authoritative store; the
/// binary link matrix and per-UE serving index are derived views. A UE absent
/// from every cluster has no link (all-zero matrix row).
struct Assignment {
  std::vector<std::vector<int>> cluster_members;  ///< per-UAV UE index lists
  std::vector<Vec3> uav_positions;                ///< serving positions, z == H
  std::vector<bool> uav_active;                   ///< false once withdrawn for energy reasons

  static Assignment from_members(std::vector<std::vector<int>> members,
                                 std::vector<Vec3> positions);

  int uav_count() const { return static_cast<int>(cluster_members.size()); }

  /// Serving UAV index per UE, -1 when unassigned.
  /// Throws StructuralError if any UE appears in two clusters.
  std::vector<int> serving_uav(int ue_count) const;

  /// Dense I x J binary link matrix (row-major).
  std::vector<std::vector<int>> link_matrix(int ue_count) const;
};

struct UeBreakdown {
  double satisfaction = 0.0;          ///< delta * ln(1 + g)
  double transmission_energy_j = 0.0;
  double local_energy_j = 0.0;
  double payment = 0.0;               ///< lambda * g
  double utility = 0.0;
};

struct UavBreakdown {
  double compute_energy_j = 0.0;
  double hover_energy_j = 0.0;
};

struct UtilityBreakdown {
  std::vector<UeBreakdown> ues;
  std::vector<UavBreakdown> uavs;
  double revenue = 0.0;
  double total_cost = 0.0;
  double controller_utility = 0.0;
  double mean_ue_utility = 0.0;
};

/// Transmission energy per offloaded MB: p * 8e6 / r. This is the "p/r" factor
/// of the closed forms in canonical units.
double transmit_energy_per_mb(const UeProfile& ue, double rate_bps);

/// Compute energy per offloaded MB when `concurrent` UEs share the server:
/// P_comp * alpha * 1e6 * M / f.
double compute_energy_per_mb(const UavProfile& uav, const ChannelConstants& c,
                             int concurrent);

/// Utility of one UE: delta*ln(1+g) - E_trans - E_local - lambda*g.
/// Throws Error if g is outside [0, G_i].
double ue_utility(const UeProfile& ue, double offload_mb, double price_per_mb,
                  double rate_bps);

/// Number of UEs concurrently offloading to each UAV: linked AND g > 0.
std::vector<int> offloading_counts(const Assignment& a,
                                   const std::vector<double>& offload_mb);

/// Full evaluation of both parties' utility terms for a profile under an
/// assignment.
UtilityBreakdown evaluate(const StrategyProfile& profile, const Assignment& a,
                          const Scenario& s);

/// Controller utility: revenue minus compute energy minus hover energy of the
/// active UAVs.
double controller_utility(const StrategyProfile& profile, const Assignment& a,
                          const Scenario& s);

/// Per-UAV battery check: E_comp + E_hov <= budget. Inactive UAVs draw nothing
/// and report true.
std::vector<bool> energy_feasible(const Assignment& a,
                                  const StrategyProfile& profile,
                                  const Scenario& s);

}  // namespace stackmec

#endif  // STACKMEC_ECONOMICS_HPP
