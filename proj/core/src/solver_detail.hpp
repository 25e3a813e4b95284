#ifndef STACKMEC_SOLVER_DETAIL_HPP
#define STACKMEC_SOLVER_DETAIL_HPP

// Internal solver plumbing shared between the equilibrium loop and the
// one-shot baselines. Not installed.

#include <cstdint>
#include <vector>

#include "stackmec/economics.hpp"
#include "stackmec/scenario.hpp"
#include "stackmec/solver.hpp"

namespace stackmec::detail {

// Stream tags for mix_seed: every consumer of randomness gets its own
// deterministic stream derived from the one user-facing seed. Inner PSO
// streams are fixed per UE and do NOT vary with the outer iteration, so a
// stabilized outer state reproduces itself exactly (convergence is detected
// as a true fixed point).
inline constexpr std::uint64_t kStreamKmeans = 1;
inline constexpr std::uint64_t kStreamOsrs = 2;
inline constexpr std::uint64_t kStreamPsrs = 3;
inline constexpr std::uint64_t kStreamInnerBase = 16;

/// Assignment plus the per-UE link data derived from it.
struct Deployment {
  Assignment assignment;
  std::vector<int> serving;  ///< serving UAV per UE, -1 when unassigned
  std::vector<double> rate_bps;
};

/// ULAR pre-deployment: k-means placement at zero demand (capacity is
/// enforced against live offloads inside the loop, not at placement time).
Deployment predeploy(const Scenario& s, const SolverConfig& cfg,
                     std::uint64_t seed);

/// Recomputes serving indices and uplink rates after an assignment change.
void refresh_links(Deployment& d, const Scenario& s);

/// Anticipated concurrency per UE: cluster mates already offloading, plus the
/// UE itself (it prices as if it will offload).
std::vector<int> anticipated_concurrency(const Assignment& a,
                                         const std::vector<int>& serving,
                                         const std::vector<double>& offload_mb,
                                         int ue_count);

void append_record(SolveReport& report, int iteration,
                   const StrategyProfile& profile, const Assignment& a,
                   const Scenario& s, double max_change,
                   const std::vector<bool>& clamped);

/// Fills final_* fields, runs the certificate, stamps wall time.
void finalize_report(SolveReport& report, const StrategyProfile& profile,
                     const Assignment& a, const Scenario& s,
                     const SolverConfig& cfg, bool change_below_tolerance,
                     double wall_time_s);

SolveReport loop_solve(Algorithm kind, const Scenario& s, const SolverConfig& cfg,
                       std::uint64_t seed);
SolveReport one_shot_solve(Algorithm kind, const Scenario& s,
                           const SolverConfig& cfg, std::uint64_t seed);

}  // namespace stackmec::detail

#endif  // STACKMEC_SOLVER_DETAIL_HPP
