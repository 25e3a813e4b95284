#include "stackmec/ular.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "stackmec/errors.hpp"
#include "stackmec/rng.hpp"

namespace stackmec {
namespace {

// Keeps member lists sorted so tie-breaks (and output) are canonical.
void insert_member(std::vector<int>& members, int ue) {
  members.insert(std::lower_bound(members.begin(), members.end(), ue), ue);
}

void erase_member(std::vector<int>& members, int ue) {
  members.erase(std::find(members.begin(), members.end(), ue));
}

std::vector<std::vector<int>> assign_nearest(const Scenario& s,
                                             const std::vector<Vec3>& centroids) {
  const int J = static_cast<int>(centroids.size());
  std::vector<std::vector<int>> members(J);
  for (const UeProfile& ue : s.ues) {
    int best = 0;
    double best_d = distance_m(ue.position, centroids[0]);
    for (int j = 1; j < J; ++j) {
      const double d = distance_m(ue.position, centroids[j]);
      if (d < best_d) {  // strict: ties keep the lowest cluster index
        best_d = d;
        best = j;
      }
    }
    members[best].push_back(ue.id);
  }
  return members;
}

// Re-seeds each empty cluster at the UE farthest from its current centroid,
// skipping donors that would become empty themselves.
void repair_empty(const Scenario& s, std::vector<Vec3>& centroids,
                  std::vector<std::vector<int>>& members) {
  const int J = static_cast<int>(centroids.size());
  for (int j = 0; j < J; ++j) {
    if (!members[j].empty()) continue;
    int worst_ue = -1;
    int worst_cluster = -1;
    double worst_d = -1.0;
    for (int k = 0; k < J; ++k) {
      if (members[k].size() < 2) continue;
      for (int i : members[k]) {
        const double d = distance_m(s.ues[i].position, centroids[k]);
        if (d > worst_d) {
          worst_d = d;
          worst_ue = i;
          worst_cluster = k;
        }
      }
    }
    if (worst_ue < 0) continue;  // nothing to donate (I == J singletons)
    erase_member(members[worst_cluster], worst_ue);
    members[j].push_back(worst_ue);
    centroids[j] = {s.ues[worst_ue].position.x, s.ues[worst_ue].position.y,
                    centroids[j].z};
  }
}

std::vector<Vec3> member_means(const Scenario& s, const std::vector<Vec3>& centroids,
                               const std::vector<std::vector<int>>& members) {
  std::vector<Vec3> means = centroids;
  for (std::size_t j = 0; j < members.size(); ++j) {
    if (members[j].empty()) continue;
    double sx = 0.0;
    double sy = 0.0;
    for (int i : members[j]) {
      sx += s.ues[i].position.x;
      sy += s.ues[i].position.y;
    }
    means[j].x = sx / members[j].size();
    means[j].y = sy / members[j].size();
  }
  return means;
}

/// Shared rebalance core. Disallowed clusters are emptied first and never
/// receive; the overload loop then evicts farthest members from over-capacity
/// clusters into the nearest cluster not yet exited, falling back to the most
/// residual capacity (pinning the UE) when every alternative has been exited.
Assignment rebalance_impl(const Scenario& s, const std::vector<Vec3>& centroids,
                          std::vector<std::vector<int>> members,
                          const std::vector<double>& demand_mb,
                          const std::vector<double>& capacity_mb,
                          const std::vector<bool>& allowed) {
  const int I = s.ue_count();
  const int J = static_cast<int>(centroids.size());

  double total_demand = 0.0;
  double total_capacity = 0.0;
  int allowed_count = 0;
  for (int i = 0; i < I; ++i) total_demand += demand_mb[i];
  for (int j = 0; j < J; ++j) {
    if (allowed[j]) {
      total_capacity += capacity_mb[j];
      ++allowed_count;
    }
  }
  if (allowed_count == 0) {
    throw InfeasibilityError("no available UAV to serve the UEs");
  }
  if (total_demand > total_capacity) {
    throw InfeasibilityError("total demand " + std::to_string(total_demand) +
                             " MB exceeds available capacity " +
                             std::to_string(total_capacity) + " MB");
  }

  std::vector<double> load(J, 0.0);
  for (int j = 0; j < J; ++j) {
    std::sort(members[j].begin(), members[j].end());
    for (int i : members[j]) load[j] += demand_mb[i];
  }

  std::vector<std::vector<bool>> forbidden(I, std::vector<bool>(J, false));
  std::vector<bool> pinned(I, false);

  const auto nearest_allowed = [&](int ue, int from, bool respect_forbidden) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < J; ++k) {
      if (k == from || !allowed[k]) continue;
      if (respect_forbidden && forbidden[ue][k]) continue;
      const double d = distance_m(s.ues[ue].position, centroids[k]);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    return best;
  };

  const auto move_ue = [&](int ue, int from, int to) {
    erase_member(members[from], ue);
    insert_member(members[to], ue);
    load[from] -= demand_mb[ue];
    load[to] += demand_mb[ue];
    forbidden[ue][from] = true;
  };

  // Phase 1: forcibly clear disallowed clusters.
  for (int j = 0; j < J; ++j) {
    if (allowed[j]) continue;
    while (!members[j].empty()) {
      const int ue = members[j].front();
      const int to = nearest_allowed(ue, j, /*respect_forbidden=*/false);
      // allowed_count >= 1, so a destination always exists
      move_ue(ue, j, to);
    }
  }

  // Phase 2: overload loop, lowest-index overloaded cluster first.
  const int max_moves = I * J;
  int moves = 0;
  for (;;) {
    int over = -1;
    for (int j = 0; j < J; ++j) {
      if (allowed[j] && load[j] > capacity_mb[j]) {
        over = j;
        break;
      }
    }
    if (over < 0) break;
    if (++moves > max_moves) {
      throw RebalanceError("rebalance exceeded " + std::to_string(max_moves) +
                           " moves");
    }

    int evict = -1;
    double evict_d = -1.0;
    for (int i : members[over]) {  // sorted: strict > keeps the lowest id on ties
      if (pinned[i]) continue;
      const double d = distance_m(s.ues[i].position, centroids[over]);
      if (d > evict_d) {
        evict_d = d;
        evict = i;
      }
    }
    if (evict < 0) {
      throw RebalanceError("over-capacity cluster " + std::to_string(over) +
                           " has only pinned members");
    }

    int to = nearest_allowed(evict, over, /*respect_forbidden=*/true);
    if (to < 0) {
      // Every alternative exited already: most residual capacity, then pin.
      double best_residual = -std::numeric_limits<double>::infinity();
      for (int k = 0; k < J; ++k) {
        if (k == over || !allowed[k]) continue;
        const double residual = capacity_mb[k] - load[k];
        if (residual > best_residual) {
          best_residual = residual;
          to = k;
        }
      }
      if (to < 0) {
        throw InfeasibilityError("no available UAV can absorb UE " +
                                 std::to_string(evict));
      }
      pinned[evict] = true;
    }
    move_ue(evict, over, to);
  }

  Assignment a = Assignment::from_members(std::move(members), centroids);
  for (int j = 0; j < J; ++j) a.uav_active[j] = allowed[j];
  return a;
}

}  // namespace

Clustering kmeans_place(const Scenario& s, std::uint64_t seed, int max_iterations) {
  const int I = s.ue_count();
  const int J = s.uav_count();
  if (I < J) {
    throw ConfigError("need at least as many UEs as UAVs (I = " +
                      std::to_string(I) + ", J = " + std::to_string(J) + ")");
  }
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");

  // Seed centroids by sampling J distinct UEs (partial Fisher-Yates).
  std::mt19937_64 gen(seed);
  std::vector<int> idx(I);
  std::iota(idx.begin(), idx.end(), 0);
  for (int t = 0; t < J; ++t) {
    std::swap(idx[t], idx[t + uniform_index(gen, I - t)]);
  }

  Clustering c;
  c.centroids.resize(J);
  for (int j = 0; j < J; ++j) {
    c.centroids[j] = {s.ues[idx[j]].position.x, s.ues[idx[j]].position.y,
                      s.uavs[j].position.z};
  }

  c.members = assign_nearest(s, c.centroids);
  repair_empty(s, c.centroids, c.members);
  for (int iter = 1; iter <= max_iterations; ++iter) {
    c.iterations_used = iter;
    const std::vector<Vec3> means = member_means(s, c.centroids, c.members);
    if (means == c.centroids) break;  // fixed point: centroids equal member means
    c.centroids = means;
    c.members = assign_nearest(s, c.centroids);
    repair_empty(s, c.centroids, c.members);
  }
  return c;
}

Assignment capacity_rebalance(const Scenario& s, const Clustering& c,
                              const std::vector<double>& demand_mb,
                              const std::vector<double>& capacity_mb) {
  const std::vector<bool> all(c.centroids.size(), true);
  return rebalance_impl(s, c.centroids, c.members, demand_mb, capacity_mb, all);
}

Assignment capacity_rebalance(const Scenario& s, const Clustering& c,
                              const std::vector<double>& demand_mb,
                              const std::vector<double>& capacity_mb,
                              const std::vector<bool>& allowed) {
  return rebalance_impl(s, c.centroids, c.members, demand_mb, capacity_mb,
                        allowed);
}

AvailabilityResponse respond_availability(const Assignment& a,
                                          const StrategyProfile& profile,
                                          const Scenario& s) {
  const std::vector<bool> ok = energy_feasible(a, profile, s);
  AvailabilityResponse resp;
  resp.available.resize(a.uav_count());
  bool any_withdrawn = false;
  for (int j = 0; j < a.uav_count(); ++j) {
    const bool was_active = a.uav_active.empty() || a.uav_active[j];
    resp.available[j] = was_active && ok[j];
    if (was_active && !ok[j]) any_withdrawn = true;
  }

  if (!any_withdrawn) {
    resp.assignment = a;
    resp.changed = false;
    return resp;
  }

  std::vector<double> capacity(a.uav_count());
  for (int j = 0; j < a.uav_count(); ++j) capacity[j] = s.uavs[j].data_capacity_mb;
  resp.assignment = rebalance_impl(s, a.uav_positions, a.cluster_members,
                                   profile.offload_mb, capacity, resp.available);
  resp.changed = true;
  return resp;
}

Clustering to_clustering(const Assignment& a) {
  Clustering c;
  c.centroids = a.uav_positions;
  c.members = a.cluster_members;
  return c;
}

double within_cluster_ssd(const Clustering& c, const Scenario& s) {
  double ssd = 0.0;
  for (std::size_t j = 0; j < c.members.size(); ++j) {
    for (int i : c.members[j]) {
      const double d = distance_m(s.ues[i].position, c.centroids[j]);
      ssd += d * d;
    }
  }
  return ssd;
}

}  // namespace stackmec
