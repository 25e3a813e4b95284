#include "stackmec/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "stackmec/channel.hpp"
#include "stackmec/errors.hpp"
#include "stackmec/game.hpp"

namespace stackmec {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
  if (!out) throw Error("cannot open for writing: " + path.string());
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int worker_count() {
  if (const char* env = std::getenv("STACKMEC_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
    return 1;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void write_trace_csv(const SolveReport& report, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "iter,U_con,mean_U_i,max_strategy_change\n";
  for (const IterationRecord& rec : report.iterations) {
    out << rec.iteration << ',' << format_double(rec.controller_utility) << ','
        << format_double(rec.mean_ue_utility) << ','
        << format_double(rec.max_strategy_change) << '\n';
  }
  if (!out) throw Error("write failed: " + path.string());
}

void write_summary_json(const SolveReport& report, const Scenario& s,
                        const std::filesystem::path& path) {
  using nlohmann::json;
  json doc;
  doc["algorithm"] = algorithm_name(report.algorithm);
  doc["seed"] = report.seed;
  doc["scenario_seed"] = s.seed;
  doc["converged"] = report.converged;
  doc["outer_iterations"] = report.outer_iterations;
  doc["wall_time_s"] = report.wall_time_s;

  doc["final"] = {
      {"controller_utility", report.final_breakdown.controller_utility},
      {"mean_ue_utility", report.final_breakdown.mean_ue_utility},
      {"revenue", report.final_breakdown.revenue},
      {"total_cost", report.final_breakdown.total_cost},
  };
  doc["certificate"] = {
      {"certified", report.certificate.certified},
      {"max_ue_gain", report.certificate.max_ue_gain},
      {"max_controller_gain", report.certificate.max_controller_gain},
      {"tolerance", report.certificate.tolerance},
  };

  doc["ues"] = nlohmann::json::array();
  for (int i = 0; i < s.ue_count(); ++i) {
    doc["ues"].push_back({
        {"id", i},
        {"price_per_mb", report.final_profile.price_per_mb[i]},
        {"offload_mb", report.final_profile.offload_mb[i]},
        {"utility", report.final_breakdown.ues[i].utility},
    });
  }
  doc["uavs"] = nlohmann::json::array();
  for (int j = 0; j < report.final_assignment.uav_count(); ++j) {
    doc["uavs"].push_back({
        {"id", j},
        {"active", static_cast<bool>(report.final_assignment.uav_active[j])},
        {"members", report.final_assignment.cluster_members[j]},
        {"compute_energy_j", report.final_breakdown.uavs[j].compute_energy_j},
        {"hover_energy_j", report.final_breakdown.uavs[j].hover_energy_j},
    });
  }

  std::ofstream out = open_out(path);
  out << doc.dump(2) << '\n';
  if (!out) throw Error("write failed: " + path.string());
}

void write_ue_cross_section_csv(const SolveReport& report, const Scenario& s,
                                const std::filesystem::path& path,
                                int grid_points) {
  if (grid_points < 2) throw ConfigError("grid_points must be >= 2");
  const std::vector<int> serving =
      report.final_assignment.serving_uav(s.ue_count());
  std::ofstream out = open_out(path);
  out << "ue_id,offload_mb,ue_utility\n";
  for (int i = 0; i < s.ue_count(); ++i) {
    if (serving[i] < 0) continue;
    const double rate = uplink_rate_bps(
        s.ues[i], report.final_assignment.uav_positions[serving[i]], s.channel);
    for (int t = 0; t < grid_points; ++t) {
      const double g = t == grid_points - 1
                           ? s.ues[i].total_data_mb
                           : s.ues[i].total_data_mb * t / (grid_points - 1);
      const double u =
          ue_utility(s.ues[i], g, report.final_profile.price_per_mb[i], rate);
      out << i << ',' << format_double(g) << ',' << format_double(u) << '\n';
    }
  }
  if (!out) throw Error("write failed: " + path.string());
}

void write_controller_cross_section_csv(const SolveReport& report,
                                        const Scenario& s,
                                        const std::filesystem::path& path,
                                        int grid_points) {
  if (grid_points < 2) throw ConfigError("grid_points must be >= 2");
  const std::vector<int> serving =
      report.final_assignment.serving_uav(s.ue_count());
  std::ofstream out = open_out(path);
  out << "ue_id,price_per_mb,controller_utility\n";
  for (int i = 0; i < s.ue_count(); ++i) {
    if (serving[i] < 0) continue;
    const double rate = uplink_rate_bps(
        s.ues[i], report.final_assignment.uav_positions[serving[i]], s.channel);
    const PriceBounds b = price_bounds(s.ues[i], rate);
    StrategyProfile trial = report.final_profile;
    for (int t = 0; t < grid_points; ++t) {
      const double lambda =
          b.lambda_min + (b.lambda_max - b.lambda_min) * t / (grid_points - 1);
      trial.price_per_mb[i] = lambda;
      trial.offload_mb[i] = optimal_offload(s.ues[i], lambda, rate);
      const double u = controller_utility(trial, report.final_assignment, s);
      out << i << ',' << format_double(lambda) << ',' << format_double(u) << '\n';
    }
  }
  if (!out) throw Error("write failed: " + path.string());
}

GenerationConfig apply_sweep_value(const GenerationConfig& base,
                                   const std::string& axis, double value) {
  GenerationConfig cfg = base;
  if (axis == "ue_count") {
    cfg.ue_count = static_cast<int>(value);
  } else if (axis == "uav_count") {
    cfg.uav_count = static_cast<int>(value);
  } else if (axis == "total_data_hi") {
    cfg.total_data_mb.hi = value;
    cfg.total_data_mb.lo = std::min(cfg.total_data_mb.lo, value);
  } else {
    throw ConfigError("unknown sweep axis '" + axis +
                      "' (expected ue_count, uav_count, or total_data_hi)");
  }
  return cfg;
}

namespace {

struct Job {
  Algorithm algorithm = Algorithm::Cppo;
  std::uint64_t seed = 0;
  double sweep_value = 0.0;
  int sweep_index = -1;  ///< -1 when no sweep axis
};

struct JobResult {
  double mean_ue_utility = 0.0;
  double controller_utility = 0.0;
};

void check_experiment(const ExperimentConfig& config) {
  if (config.algorithms.empty()) {
    throw ConfigError("at least one algorithm is required");
  }
  if (config.seeds.empty()) throw ConfigError("at least one seed is required");
  if (config.sweep) {
    if (config.sweep->values.empty()) {
      throw ConfigError("sweep values must be non-empty");
    }
    for (std::size_t t = 1; t < config.sweep->values.size(); ++t) {
      if (config.sweep->values[t] <= config.sweep->values[t - 1]) {
        throw ConfigError("sweep values must be strictly increasing");
      }
    }
    if (config.scenario_path) {
      throw ConfigError("a sweep cannot run on a fixed scenario file");
    }
  }
}

}  // namespace

std::vector<CompareRow> run_comparison(const ExperimentConfig& config) {
  check_experiment(config);

  std::optional<Scenario> fixed;
  if (config.scenario_path) fixed = load(*config.scenario_path);

  std::vector<double> sweep_values = {0.0};
  if (config.sweep) sweep_values = config.sweep->values;
  const bool with_sweep = config.sweep.has_value();

  std::vector<Job> jobs;
  for (std::size_t v = 0; v < sweep_values.size(); ++v) {
    for (Algorithm alg : config.algorithms) {
      for (std::uint64_t seed : config.seeds) {
        Job job;
        job.algorithm = alg;
        job.seed = seed;
        job.sweep_value = sweep_values[v];
        job.sweep_index = with_sweep ? static_cast<int>(v) : -1;
        jobs.push_back(job);
      }
    }
  }

  std::vector<JobResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  const auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= jobs.size()) return;
      try {
        const Job& job = jobs[t];
        Scenario scenario;
        if (fixed) {
          scenario = *fixed;
        } else {
          GenerationConfig gen = config.base;
          if (job.sweep_index >= 0) {
            gen = apply_sweep_value(gen, config.sweep->name, job.sweep_value);
          }
          scenario = generate(gen, job.seed);
        }
        const SolveReport report =
            solve_baseline(job.algorithm, scenario, config.solver, job.seed);
        results[t].mean_ue_utility = report.final_breakdown.mean_ue_utility;
        results[t].controller_utility = report.final_breakdown.controller_utility;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  const int workers =
      std::min<int>(worker_count(), static_cast<int>(jobs.size()));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  // Aggregate in (sweep value, algorithm) order; jobs were laid out that way.
  std::vector<CompareRow> rows;
  const int n = static_cast<int>(config.seeds.size());
  std::size_t t = 0;
  for (double value : sweep_values) {
    for (Algorithm alg : config.algorithms) {
      CompareRow row;
      row.algorithm = algorithm_name(alg);
      row.sweep_value = value;
      row.num_seeds = n;
      double sum_ue = 0.0;
      double sum_con = 0.0;
      for (int k = 0; k < n; ++k) {
        sum_ue += results[t + k].mean_ue_utility;
        sum_con += results[t + k].controller_utility;
      }
      row.ue_utility_mean = sum_ue / n;
      row.controller_utility_mean = sum_con / n;
      double ss_ue = 0.0;
      double ss_con = 0.0;
      for (int k = 0; k < n; ++k) {
        const double du = results[t + k].mean_ue_utility - row.ue_utility_mean;
        const double dc =
            results[t + k].controller_utility - row.controller_utility_mean;
        ss_ue += du * du;
        ss_con += dc * dc;
      }
      if (n > 1) {
        row.ue_utility_std = std::sqrt(ss_ue / (n - 1));
        row.controller_utility_std = std::sqrt(ss_con / (n - 1));
      }
      rows.push_back(row);
      t += n;
    }
  }
  return rows;
}

void write_compare_csv(const std::vector<CompareRow>& rows, bool with_sweep,
                       const std::string& axis_name,
                       const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "algorithm,";
  if (with_sweep) out << axis_name << ',';
  out << "num_seeds,ue_utility_mean,ue_utility_std,controller_utility_mean,"
         "controller_utility_std\n";
  for (const CompareRow& row : rows) {
    out << row.algorithm << ',';
    if (with_sweep) out << format_double(row.sweep_value) << ',';
    out << row.num_seeds << ',' << format_double(row.ue_utility_mean) << ','
        << format_double(row.ue_utility_std) << ','
        << format_double(row.controller_utility_mean) << ','
        << format_double(row.controller_utility_std) << '\n';
  }
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace stackmec
