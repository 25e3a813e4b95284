#ifndef STACKMEC_ULAR_HPP
#define STACKMEC_ULAR_HPP

#include <cstdint>
#include <vector>

#include "stackmec/economics.hpp"
#include "stackmec/scenario.hpp"
#include "stackmec/vec3.hpp"

namespace stackmec {

/// K-means output over UE ground positions. Centroids sit at corridor height.
struct Clustering {
  std::vector<Vec3> centroids;
  std::vector<std::vector<int>> members;
  int iterations_used = 0;
};

/// Lloyd iteration: seed centroids from J distinct UEs (seeded RNG), assign
/// by 3D distance with centroid z = H, update centroids to member means, stop
/// when centroids repeat or after max_iterations. Empty clusters are re-seeded
/// at the UE farthest from its current centroid. Ties break to the lowest
/// cluster index. Throws ConfigError if I < J.
Clustering kmeans_place(const Scenario& s, std::uint64_t seed,
                        int max_iterations = 100);

/// Moves UEs out of over-capacity clusters: repeatedly evict the member
/// farthest from an overloaded centroid and insert it into the nearest other
/// cluster it has not already exited this call. When every alternative has
/// been exited, the UE goes to the cluster with the most residual capacity and
/// is pinned there. Performs at most I*J moves.
/// Throws InfeasibilityError when total demand exceeds total capacity and
/// RebalanceError if the guard trips.
Assignment capacity_rebalance(const Scenario& s, const Clustering& c,
                              const std::vector<double>& demand_mb,
                              const std::vector<double>& capacity_mb);

/// Restricted form: clusters with allowed[j] == false are emptied first and
/// never receive members (used after availability withdrawals).
Assignment capacity_rebalance(const Scenario& s, const Clustering& c,
                              const std::vector<double>& demand_mb,
                              const std::vector<double>& capacity_mb,
                              const std::vector<bool>& allowed);

struct AvailabilityResponse {
  std::vector<bool> available;
  Assignment assignment;
  bool changed = false;  ///< true when any UAV was withdrawn
};

/// Flags each UAV unavailable when its assigned load violates the energy
/// budget, withdraws those UAVs, and reassigns their members across the
/// remaining ones (capacity-respecting). Throws InfeasibilityError when no
/// available UAV can absorb the load.
AvailabilityResponse respond_availability(const Assignment& a,
                                          const StrategyProfile& profile,
                                          const Scenario& s);

/// Clustering view of an assignment (centroids = UAV positions).
Clustering to_clustering(const Assignment& a);

/// Sum of squared member-to-centroid distances, the Lloyd objective.
double within_cluster_ssd(const Clustering& c, const Scenario& s);

}  // namespace stackmec

#endif  // STACKMEC_ULAR_HPP
