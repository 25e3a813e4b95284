#ifndef STACKMEC_SOLVER_HPP
#define STACKMEC_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stackmec/economics.hpp"
#include "stackmec/game.hpp"
#include "stackmec/scenario.hpp"
#include "stackmec/ular.hpp"

namespace stackmec {

/// Inner optimizer configuration. The adaptation follows the stagnation
/// schedule: c1 = c1_0 + step*s1, c2 = c2_0 + step*s2, w decremented by
/// step*s1 and clamped at w_floor. Setting adaptive = false freezes the
/// coefficients at their initial values (the plain-PSO comparator).
struct PsoConfig {
  int swarm_size = 30;
  int inner_iterations = 50;
  double w0 = 0.9;
  double c1_0 = 1.5;
  double c2_0 = 1.5;
  std::vector<std::pair<double, double>> bounds;  ///< per-dimension box
  double adaptation_step = 0.1;
  double w_floor = 0.05;
  bool adaptive = true;
};

/// Swarm state exposed to observers. s1/w are per particle (personal-best
/// stagnation), s2 is shared (global-best stagnation).
struct ParticleState {
  std::vector<std::vector<double>> positions;
  std::vector<std::vector<double>> velocities;
  std::vector<std::vector<double>> personal_best;
  std::vector<double> personal_best_value;
  std::vector<double> global_best;
  double global_best_value = 0.0;
  std::vector<int> s1;       ///< rounds each personal best has been unchanged
  int s2 = 0;                ///< rounds the global best has been unchanged
  std::vector<double> inertia;
  int iteration = 0;
};

using PsoObserver = std::function<void(const ParticleState&)>;

struct PsoResult {
  std::vector<double> best_position;
  double best_value = 0.0;
  std::vector<double> best_value_history;  ///< global best after each iteration; [0] is the init
};

/// Maximizes `objective` over the configured box. Deterministic given seed;
/// the observer (optional) is called after initialization and after every
/// velocity/position update.
PsoResult psopssl_maximize(const std::function<double(const std::vector<double>&)>& objective,
                           const PsoConfig& cfg, std::uint64_t seed,
                           const PsoObserver& observer = nullptr);

enum class Algorithm { Cppo, NuCppo, Osrs, Psrs, Pso, Gd };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);  // throws ConfigError

struct SolverConfig {
  PsoConfig pso;
  double tolerance = 1e-3;       ///< outer max-norm change on (lambda, g)
  int max_outer = 100;
  int kmeans_max_iterations = 100;
  VerifyOptions verify;          ///< final certificate options
  /// Fixed gradient-ascent step for the GD comparator, as a fraction of each
  /// UE's price interval.
  double gd_step_fraction = 0.02;
};

/// One outer iteration of the solve trace.
struct IterationRecord {
  int iteration = 0;
  std::vector<double> price_per_mb;
  std::vector<double> offload_mb;
  double controller_utility = 0.0;
  double mean_ue_utility = 0.0;
  double max_strategy_change = 0.0;
  std::vector<std::vector<int>> cluster_members;  ///< assignment snapshot
  std::vector<bool> price_clamped;  ///< price sits on its interval boundary
  std::vector<bool> uav_available;
};

struct SolveReport {
  Algorithm algorithm = Algorithm::Cppo;
  std::uint64_t seed = 0;
  std::vector<IterationRecord> iterations;
  bool converged = false;
  int outer_iterations = 0;
  double wall_time_s = 0.0;  ///< excluded from CSV output to keep reruns byte-identical
  StrategyProfile final_profile;
  Assignment final_assignment;
  UtilityBreakdown final_breakdown;
  EquilibriumCertificate certificate;
};

/// The full equilibrium loop: per-UE price updates through the inner
/// optimizer, follower best responses, capacity rebalancing and availability
/// response each outer iteration, until the strategy change falls below
/// tolerance (then certified) or the iteration budget runs out.
SolveReport cppo_solve(const Scenario& s, const SolverConfig& cfg,
                       std::uint64_t seed);

/// Baseline strategies sharing the placement and reporting machinery.
///   NuCppo: the same loop with all mid-loop rebalancing skipped.
///   Osrs:   followers best-respond to uniformly drawn fixed prices.
///   Psrs:   closed-form prices, followers offload a random fraction.
///   Pso:    frozen-coefficient inner optimizer.
///   Gd:     projected gradient ascent with fixed step as the inner optimizer.
/// Passing Algorithm::Cppo dispatches to cppo_solve.
SolveReport solve_baseline(Algorithm kind, const Scenario& s,
                           const SolverConfig& cfg, std::uint64_t seed);

}  // namespace stackmec

#endif  // STACKMEC_SOLVER_HPP
