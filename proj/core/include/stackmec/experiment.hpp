#ifndef STACKMEC_EXPERIMENT_HPP
#define STACKMEC_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stackmec/scenario.hpp"
#include "stackmec/solver.hpp"

namespace stackmec {

/// Formats a double with 12 significant digits, the CSV number format.
std::string format_double(double v);

/// Worker pool width: STACKMEC_THREADS when set (min 1), else hardware
/// concurrency.
int worker_count();

struct SweepAxis {
  std::string name;            ///< "ue_count" | "uav_count" | "total_data_hi"
  std::vector<double> values;  ///< strictly increasing
};

/// A batch experiment: algorithms x seeds (x sweep values), on scenarios
/// generated per seed from `base` or loaded from `scenario_path`.
struct ExperimentConfig {
  std::optional<std::filesystem::path> scenario_path;
  GenerationConfig base;
  std::vector<Algorithm> algorithms;
  std::vector<std::uint64_t> seeds;
  std::optional<SweepAxis> sweep;
  SolverConfig solver;
};

/// Per-iteration trace: columns iter,U_con,mean_U_i,max_strategy_change.
void write_trace_csv(const SolveReport& report, const std::filesystem::path& path);

/// Converged-point summary (final strategies, utilities, certificate, timing).
void write_summary_json(const SolveReport& report, const Scenario& s,
                        const std::filesystem::path& path);

/// Follower cross-section: U_i over a g grid at the solved prices.
/// Columns ue_id,offload_mb,ue_utility.
void write_ue_cross_section_csv(const SolveReport& report, const Scenario& s,
                                const std::filesystem::path& path,
                                int grid_points = 201);

/// Leader cross-section: controller utility over a per-UE price grid with
/// that UE re-best-responding. Columns ue_id,price_per_mb,controller_utility.
void write_controller_cross_section_csv(const SolveReport& report,
                                        const Scenario& s,
                                        const std::filesystem::path& path,
                                        int grid_points = 201);

struct CompareRow {
  std::string algorithm;
  double sweep_value = 0.0;  ///< 0 when no sweep axis
  int num_seeds = 0;
  double ue_utility_mean = 0.0;
  double ue_utility_std = 0.0;
  double controller_utility_mean = 0.0;
  double controller_utility_std = 0.0;
};

/// Runs every (algorithm, seed[, sweep value]) job on the worker pool over
/// matched scenarios and aggregates the two utility metrics.
std::vector<CompareRow> run_comparison(const ExperimentConfig& config);

void write_compare_csv(const std::vector<CompareRow>& rows, bool with_sweep,
                       const std::string& axis_name,
                       const std::filesystem::path& path);

/// Applies a sweep value to a generation config (by axis name).
GenerationConfig apply_sweep_value(const GenerationConfig& base,
                                   const std::string& axis, double value);

}  // namespace stackmec

#endif  // STACKMEC_EXPERIMENT_HPP
