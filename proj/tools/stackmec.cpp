// stackmec: scenario generation, equilibrium solving, and batch comparison
// for the Stackelberg UAV-MEC offloading model.
//
// Exit codes: 0 success, 2 usage/validation, 3 infeasibility, 4 internal.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stackmec/errors.hpp"
#include "stackmec/experiment.hpp"
#include "stackmec/scenario.hpp"
#include "stackmec/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInternal = 4;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw stackmec::ConfigError("cannot read file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void require_file(const std::filesystem::path& path, const char* what) {
  if (!std::filesystem::exists(path)) {
    throw stackmec::ConfigError(std::string(what) + " not found: " +
                                path.string());
  }
}

struct GenerateArgs {
  int ues = 0;
  int uavs = 0;
  std::uint64_t seed = 0;
  std::string config_path;
  std::string output;
};

struct SolveArgs {
  std::string scenario_path;
  std::string algorithm = "cppo";
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  bool cross_section = false;
};

struct BatchArgs {
  std::string scenario_path;
  std::string config_path;
  int ues = 0;
  int uavs = 0;
  std::vector<std::string> algorithms;
  int num_seeds = 20;
  std::vector<std::uint64_t> seed_list;
  std::string output;
  // sweep only
  std::string axis;
  std::vector<double> values;
};

struct SolverKnobs {
  double tolerance = 1e-3;
  int max_outer = 100;
  int swarm_size = 30;
  int inner_iterations = 50;
};

void add_solver_knobs(CLI::App* cmd, SolverKnobs& knobs) {
  cmd->add_option("--tolerance", knobs.tolerance,
                  "Outer-loop max-norm convergence tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-outer", knobs.max_outer, "Outer iteration budget")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--swarm", knobs.swarm_size, "Inner PSO swarm size")
      ->check(CLI::Range(2, 10000));
  cmd->add_option("--inner-iterations", knobs.inner_iterations,
                  "Inner optimizer iteration budget")
      ->check(CLI::PositiveNumber);
}

stackmec::SolverConfig make_solver_config(const SolverKnobs& knobs) {
  stackmec::SolverConfig cfg;
  cfg.tolerance = knobs.tolerance;
  cfg.max_outer = knobs.max_outer;
  cfg.pso.swarm_size = knobs.swarm_size;
  cfg.pso.inner_iterations = knobs.inner_iterations;
  return cfg;
}

stackmec::GenerationConfig load_generation_config(const std::string& config_path) {
  if (config_path.empty()) return stackmec::GenerationConfig{};
  require_file(config_path, "config file");
  return stackmec::generation_config_from_json(read_file(config_path));
}

int cmd_generate(const GenerateArgs& args, const CLI::App* cmd) {
  stackmec::GenerationConfig cfg = load_generation_config(args.config_path);
  // Flags override config-file values, which override built-in defaults.
  if (cmd->count("--ues") > 0) cfg.ue_count = args.ues;
  if (cmd->count("--uavs") > 0) cfg.uav_count = args.uavs;

  const stackmec::Scenario s = stackmec::generate(cfg, args.seed);
  stackmec::save(s, args.output);
  std::cout << args.output << '\n';
  return kExitOk;
}

int cmd_solve(const SolveArgs& args, const stackmec::SolverConfig& solver) {
  require_file(args.scenario_path, "scenario file");
  const stackmec::Scenario s = stackmec::load(args.scenario_path);
  const stackmec::Algorithm alg = stackmec::algorithm_from_name(args.algorithm);

  const stackmec::SolveReport report =
      stackmec::solve_baseline(alg, s, solver, args.seed);

  const std::filesystem::path dir(args.out_dir);
  std::filesystem::create_directories(dir);
  const auto trace = dir / "trace.csv";
  const auto summary = dir / "summary.json";
  stackmec::write_trace_csv(report, trace);
  stackmec::write_summary_json(report, s, summary);
  std::cout << trace.string() << '\n' << summary.string() << '\n';

  if (args.cross_section) {
    const auto ue_cs = dir / "ue_cross_section.csv";
    const auto con_cs = dir / "controller_cross_section.csv";
    stackmec::write_ue_cross_section_csv(report, s, ue_cs);
    stackmec::write_controller_cross_section_csv(report, s, con_cs);
    std::cout << ue_cs.string() << '\n' << con_cs.string() << '\n';
  }
  if (!report.converged) {
    std::cerr << "warning: not converged after " << report.outer_iterations
              << " outer iterations (max strategy change "
              << stackmec::format_double(
                     report.iterations.empty()
                         ? 0.0
                         : report.iterations.back().max_strategy_change)
              << ")\n";
  }
  return kExitOk;
}

stackmec::ExperimentConfig make_experiment_config(
    const BatchArgs& args, const CLI::App* cmd,
    const stackmec::SolverConfig& solver, bool is_sweep) {
  stackmec::ExperimentConfig config;
  config.solver = solver;

  if (!args.scenario_path.empty()) {
    require_file(args.scenario_path, "scenario file");
    config.scenario_path = args.scenario_path;
  } else {
    config.base = load_generation_config(args.config_path);
    if (cmd->count("--ues") > 0) config.base.ue_count = args.ues;
    if (cmd->count("--uavs") > 0) config.base.uav_count = args.uavs;
  }

  for (const std::string& name : args.algorithms) {
    config.algorithms.push_back(stackmec::algorithm_from_name(name));
  }

  if (!args.seed_list.empty()) {
    config.seeds = args.seed_list;
  } else {
    for (int k = 1; k <= args.num_seeds; ++k) {
      config.seeds.push_back(static_cast<std::uint64_t>(k));
    }
  }

  if (is_sweep) {
    stackmec::SweepAxis axis;
    axis.name = args.axis;
    axis.values = args.values;
    config.sweep = axis;
  }
  return config;
}

int cmd_compare(const BatchArgs& args, const CLI::App* cmd,
                const stackmec::SolverConfig& solver) {
  if (args.algorithms.size() < 2) {
    throw stackmec::ConfigError("compare needs at least two --algorithms");
  }
  const stackmec::ExperimentConfig config =
      make_experiment_config(args, cmd, solver, /*is_sweep=*/false);
  const std::vector<stackmec::CompareRow> rows = stackmec::run_comparison(config);
  stackmec::write_compare_csv(rows, /*with_sweep=*/false, "", args.output);
  std::cout << args.output << '\n';
  return kExitOk;
}

int cmd_sweep(const BatchArgs& args, const CLI::App* cmd,
              const stackmec::SolverConfig& solver) {
  const stackmec::ExperimentConfig config =
      make_experiment_config(args, cmd, solver, /*is_sweep=*/true);
  const std::vector<stackmec::CompareRow> rows = stackmec::run_comparison(config);
  stackmec::write_compare_csv(rows, /*with_sweep=*/true, args.axis, args.output);
  std::cout << args.output << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stackelberg UAV-MEC offloading: generator, solvers, baselines"};
  app.require_subcommand(1);

  GenerateArgs gen_args;
  CLI::App* gen = app.add_subcommand("generate", "Generate a scenario file");
  gen->add_option("--ues", gen_args.ues, "Number of UEs")
      ->check(CLI::PositiveNumber);
  gen->add_option("--uavs", gen_args.uavs, "Number of UAVs")
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_args.seed, "Generation seed");
  gen->add_option("--config", gen_args.config_path,
                  "JSON file with generation parameter ranges");
  gen->add_option("-o,--output", gen_args.output, "Output scenario path")
      ->required();

  SolveArgs solve_args;
  SolverKnobs solve_knobs;
  CLI::App* solve = app.add_subcommand("solve", "Solve one scenario");
  solve->add_option("--scenario", solve_args.scenario_path, "Scenario JSON file")
      ->required();
  solve->add_option("--algorithm", solve_args.algorithm,
                    "cppo, nu-cppo, osrs, psrs, pso, or gd");
  solve->add_option("--seed", solve_args.seed, "Solver seed");
  solve->add_option("--out-dir", solve_args.out_dir, "Output directory");
  solve->add_flag("--cross-section", solve_args.cross_section,
                  "Also write per-UE utility cross-section CSVs");
  add_solver_knobs(solve, solve_knobs);

  BatchArgs compare_args;
  SolverKnobs compare_knobs;
  CLI::App* compare =
      app.add_subcommand("compare", "Run several algorithms on matched seeds");
  compare->add_option("--scenario", compare_args.scenario_path,
                      "Fixed scenario JSON file (otherwise generated per seed)");
  compare->add_option("--config", compare_args.config_path,
                      "JSON file with generation parameter ranges");
  compare->add_option("--ues", compare_args.ues, "Number of UEs")
      ->check(CLI::PositiveNumber);
  compare->add_option("--uavs", compare_args.uavs, "Number of UAVs")
      ->check(CLI::PositiveNumber);
  compare->add_option("--algorithms", compare_args.algorithms,
                      "Comma-separated algorithm list")
      ->required()
      ->delimiter(',');
  compare->add_option("--seeds", compare_args.num_seeds,
                      "Number of seeds (1..N)")
      ->check(CLI::PositiveNumber);
  compare->add_option("--seed-list", compare_args.seed_list,
                      "Explicit comma-separated seed list")
      ->delimiter(',');
  compare->add_option("-o,--output", compare_args.output, "Output CSV path")
      ->required();
  add_solver_knobs(compare, compare_knobs);

  BatchArgs sweep_args;
  SolverKnobs sweep_knobs;
  CLI::App* sweep =
      app.add_subcommand("sweep", "Sweep a generation axis over matched seeds");
  sweep->add_option("--config", sweep_args.config_path,
                    "JSON file with generation parameter ranges");
  sweep->add_option("--ues", sweep_args.ues, "Number of UEs")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--uavs", sweep_args.uavs, "Number of UAVs")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--algorithms", sweep_args.algorithms,
                    "Comma-separated algorithm list")
      ->required()
      ->delimiter(',');
  sweep->add_option("--axis", sweep_args.axis,
                    "ue_count, uav_count, or total_data_hi")
      ->required();
  sweep->add_option("--values", sweep_args.values,
                    "Comma-separated sweep values, strictly increasing")
      ->required()
      ->delimiter(',');
  sweep->add_option("--seeds", sweep_args.num_seeds, "Number of seeds (1..N)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed-list", sweep_args.seed_list,
                    "Explicit comma-separated seed list")
      ->delimiter(',');
  sweep->add_option("-o,--output", sweep_args.output, "Output CSV path")
      ->required();
  add_solver_knobs(sweep, sweep_knobs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(gen)) return cmd_generate(gen_args, gen);
    if (app.got_subcommand(solve)) {
      return cmd_solve(solve_args, make_solver_config(solve_knobs));
    }
    if (app.got_subcommand(compare)) {
      return cmd_compare(compare_args, compare, make_solver_config(compare_knobs));
    }
    if (app.got_subcommand(sweep)) {
      return cmd_sweep(sweep_args, sweep, make_solver_config(sweep_knobs));
    }
    return kExitUsage;
  } catch (const stackmec::InfeasibilityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const stackmec::RebalanceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const stackmec::DegenerateEconomicsError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const stackmec::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const stackmec::SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const stackmec::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
