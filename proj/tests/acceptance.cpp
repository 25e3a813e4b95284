// Acceptance gate: one check per shipped guarantee, each printing a single
// PASS/FAIL line with the measured numbers and the pinned tolerance. The
// process exits nonzero if any criterion fails. Expected runtime: ~2 minutes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <stackmec/channel.hpp>
#include <stackmec/economics.hpp>
#include <stackmec/errors.hpp>
#include <stackmec/experiment.hpp>
#include <stackmec/game.hpp>
#include <stackmec/rng.hpp>
#include <stackmec/scenario.hpp>
#include <stackmec/solver.hpp>
#include <stackmec/ular.hpp>

#include "oracles.hpp"

using namespace stackmec;
namespace fs = std::filesystem;

namespace {

// ---- pinned tolerances ------------------------------------------------------
constexpr double kOffloadTolMb = 1e-3;        // criterion 1
constexpr double kPriceTolOfInterval = 1e-4;  // criterion 2
constexpr double kConcavitySlack = 1e-9;      // criterion 2, per unit of |F|
constexpr double kEquilibriumRelTol = 1e-6;   // criterion 3 (certificate)
constexpr double kConvergenceTol = 1e-3;      // criterion 4 (max-norm change)
constexpr int kConvergenceHorizon = 15;       // criterion 4
constexpr double kConvergenceQuota = 0.90;    // criterion 4
constexpr double kSpeedupQuota = 0.70;        // criterion 5
constexpr double kWithin = 0.01;              // criterion 5 (1% of optimum)
constexpr double kOrderingMargin = 0.05;      // criterion 6
constexpr double kCapacitySlack = 1e-9;       // criterion 7
// Above ~95% fleet load the greedy rebalancer may reject a packing out loud
// (it is not a bin packer; the unit suite covers that escape hatch), so the
// invariant sweep samples instances with operating headroom.
constexpr double kLoadHeadroom = 0.95;        // criterion 7

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  std::ostringstream out;
  out.precision(3);
  out << v;
  return out.str();
}

Scenario one_on_one(std::uint64_t seed) {
  GenerationConfig cfg;
  cfg.ue_count = 1;
  cfg.uav_count = 1;
  return generate(cfg, seed);
}

long double oracle_rate(const Scenario& s) {
  const UeProfile& ue = s.ues[0];
  const UavProfile& uav = s.uavs[0];
  const long double dx = ue.position.x - uav.position.x;
  const long double dy = ue.position.y - uav.position.y;
  const long double dz = ue.position.z - uav.position.z;
  const long double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
  return oracle::rate_bps(ue.transmit_power_w, dist, s.channel.path_loss_exponent,
                          s.channel.bandwidth_hz, s.channel.noise_power_w);
}

// ---- criterion 1: follower best response ------------------------------------
Outcome follower_closed_form() {
  std::mt19937_64 price_rng(9001);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  int failures = 0;
  const int draws = 1000;
  for (int k = 1; k <= draws; ++k) {
    const Scenario s = one_on_one(10000 + k);
    const UeProfile& ue = s.ues[0];
    const long double r = oracle_rate(s);
    const long double ct = ue.local_power_w * 8e6L / r;
    const long double a = ct - ue.unit_energy_j_per_mb;
    const long double lambda_max = ue.satisfaction_coeff - a;
    const double lambda = unit(price_rng) * 1.1 * static_cast<double>(lambda_max);

    const auto objective = [&](double g) {
      return static_cast<double>(
          oracle::ue_utility(ue.satisfaction_coeff, ue.unit_energy_j_per_mb,
                             ue.total_data_mb, ue.local_power_w, r, lambda, g));
    };
    const oracle::GridMax grid =
        oracle::grid_argmax(objective, 0.0, ue.total_data_mb, 2001, 2);

    const double rate = uplink_rate_bps(ue, s.uavs[0].position, s.channel);
    const double closed = optimal_offload(ue, lambda, rate);
    const double gap = std::abs(closed - grid.arg);
    worst = std::max(worst, gap);
    if (gap > kOffloadTolMb) ++failures;
  }
  Outcome out;
  out.pass = failures == 0;
  out.detail = std::to_string(draws - failures) + "/" + std::to_string(draws) +
               " draws within " + num(kOffloadTolMb) + " MB of the grid argmax" +
               " (worst gap " + num(worst) + " MB)";
  return out;
}

// ---- criterion 2: leader optimal price --------------------------------------
Outcome leader_closed_form() {
  double worst_rel = 0.0;
  int failures = 0;
  int concavity_violations = 0;
  int degenerate_skipped = 0;
  int valid = 0;
  std::uint64_t seed = 20000;
  const int wanted = 1000;
  while (valid < wanted) {
    const Scenario s = one_on_one(++seed);
    const UeProfile& ue = s.ues[0];
    const UavProfile& uav = s.uavs[0];
    const double rate = uplink_rate_bps(ue, uav.position, s.channel);

    double closed = 0.0;
    try {
      closed = optimal_price(ue, rate, 1, uav, s.channel);
    } catch (const DegenerateEconomicsError&) {
      ++degenerate_skipped;
      continue;
    }
    ++valid;

    const long double r = oracle_rate(s);
    const long double ct = ue.local_power_w * 8e6L / r;
    const long double a = ct - ue.unit_energy_j_per_mb;
    const long double kk = static_cast<long double>(uav.compute_power_w) *
                           s.channel.encode_cycles_per_byte * 1e6L /
                           uav.compute_capacity_cps;
    const long double delta = ue.satisfaction_coeff;
    const long double big_g = ue.total_data_mb;
    const long double lo = delta / (1.0L + big_g) - a;
    const long double hi = delta - a;
    const auto best_response = [&](long double lambda) {
      long double g = delta / (a + lambda) - 1.0L;
      if (lambda <= lo) g = big_g;
      if (lambda >= hi) g = 0.0L;
      return std::clamp(g, 0.0L, big_g);
    };
    const auto leader_value = [&](double lambda) {
      return static_cast<double>((lambda - kk) * best_response(lambda));
    };

    const oracle::GridMax grid = oracle::grid_argmax(
        leader_value, static_cast<double>(lo), static_cast<double>(hi), 2001, 2);
    const double width = static_cast<double>(hi - lo);
    const double rel = std::abs(closed - grid.arg) / width;
    worst_rel = std::max(worst_rel, rel);
    if (rel > kPriceTolOfInterval) ++failures;

    // concavity: second differences of the leader objective on a uniform grid
    const int n = 2001;
    std::vector<double> f(n);
    double scale = 1.0;
    for (int t = 0; t < n; ++t) {
      const double lambda =
          static_cast<double>(lo) + width * t / static_cast<double>(n - 1);
      f[t] = leader_value(lambda);
      scale = std::max(scale, std::abs(f[t]));
    }
    for (int t = 1; t + 1 < n; ++t) {
      if (f[t + 1] - 2.0 * f[t] + f[t - 1] > kConcavitySlack * scale) {
        ++concavity_violations;
        break;
      }
    }
  }
  Outcome out;
  out.pass = failures == 0 && concavity_violations == 0;
  out.detail = std::to_string(wanted - failures) + "/" + std::to_string(wanted) +
               " instances within " + num(kPriceTolOfInterval) +
               " of the interval (worst " + num(worst_rel) + "), " +
               std::to_string(concavity_violations) + " concavity violations; " +
               std::to_string(degenerate_skipped) +
               " degenerate draws skipped (no interior analysis)";
  return out;
}

std::vector<std::vector<std::string>> parse_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

// ---- criterion 3: equilibrium cross-sections --------------------------------
Outcome equilibrium_cross_check() {
  const auto t0 = std::chrono::steady_clock::now();
  GenerationConfig cfg;
  cfg.ue_count = 20;
  cfg.uav_count = 3;
  const Scenario s = generate(cfg, 1);
  const SolveReport rep = cppo_solve(s, SolverConfig{}, 1);

  Outcome out;
  if (!rep.converged || !rep.certificate.certified) {
    out.detail = "reference run failed to converge with a certificate";
    return out;
  }

  const fs::path dir = fs::temp_directory_path() / "stackmec_acceptance_c3";
  fs::create_directories(dir);
  const int grid = 201;
  write_ue_cross_section_csv(rep, s, dir / "ue.csv", grid);
  write_controller_cross_section_csv(rep, s, dir / "con.csv", grid);

  const auto ue_rows = parse_csv(dir / "ue.csv");
  const auto con_rows = parse_csv(dir / "con.csv");
  const std::vector<int> serving = rep.final_assignment.serving_uav(s.ue_count());
  int follower_misses = 0;
  int leader_misses = 0;
  for (int i = 0; i < s.ue_count(); ++i) {
    double best_g = 0.0, best_gv = -1e300;
    double best_l = 0.0, best_lv = -1e300;
    for (int t = 0; t < grid; ++t) {
      const auto& gr = ue_rows[1 + i * grid + t];
      const auto& lr = con_rows[1 + i * grid + t];
      if (std::stod(gr[2]) > best_gv) {
        best_gv = std::stod(gr[2]);
        best_g = std::stod(gr[1]);
      }
      if (std::stod(lr[2]) > best_lv) {
        best_lv = std::stod(lr[2]);
        best_l = std::stod(lr[1]);
      }
    }
    const double g_step = s.ues[i].total_data_mb / (grid - 1);
    if (std::abs(best_g - rep.final_profile.offload_mb[i]) > g_step + 1e-9)
      ++follower_misses;
    const double rate = uplink_rate_bps(
        s.ues[i], rep.final_assignment.uav_positions[serving[i]], s.channel);
    const PriceBounds pb = price_bounds(s.ues[i], rate);
    const double l_step = (pb.lambda_max - pb.lambda_min) / (grid - 1);
    if (std::abs(best_l - rep.final_profile.price_per_mb[i]) > l_step + 1e-9)
      ++leader_misses;
  }
  fs::remove_all(dir);

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.pass = follower_misses == 0 && leader_misses == 0 &&
             rep.certificate.tolerance == kEquilibriumRelTol && elapsed < 60.0;
  out.detail = "certified at rel tol " + num(rep.certificate.tolerance) +
               " (gains " + num(rep.certificate.max_ue_gain) + "/" +
               num(rep.certificate.max_controller_gain) + "); " +
               std::to_string(follower_misses) + " follower and " +
               std::to_string(leader_misses) +
               " leader argmax misses beyond one grid step; " + num(elapsed) +
               " s elapsed (budget 60)";
  return out;
}

// ---- criterion 4: convergence horizon ---------------------------------------
Outcome convergence_horizon() {
  GenerationConfig cfg;
  cfg.ue_count = 20;
  cfg.uav_count = 3;

  std::vector<std::uint64_t> used;
  std::vector<std::uint64_t> skipped;
  std::uint64_t seed = 0;
  while (used.size() < 20) {
    ++seed;
    const Scenario s = generate(cfg, seed);
    double demand = 0.0, capacity = 0.0;
    for (const auto& ue : s.ues) demand += ue.total_data_mb;
    for (const auto& uav : s.uavs) capacity += uav.data_capacity_mb;
    // the solver's contract only covers fleets that can hold the worst case
    if (demand > capacity) {
      skipped.push_back(seed);
      continue;
    }
    used.push_back(seed);
  }

  int within = 0;
  int worst_iterations = 0;
  for (std::uint64_t s_seed : used) {
    const Scenario s = generate(cfg, s_seed);
    SolverConfig cfg_solver;
    cfg_solver.tolerance = kConvergenceTol;
    const SolveReport rep = cppo_solve(s, cfg_solver, s_seed);
    worst_iterations = std::max(worst_iterations, rep.outer_iterations);
    if (rep.converged && rep.outer_iterations <= kConvergenceHorizon) ++within;
  }

  std::string skip_note = "none";
  if (!skipped.empty()) {
    skip_note.clear();
    for (std::uint64_t v : skipped)
      skip_note += (skip_note.empty() ? "" : ",") + std::to_string(v);
  }
  Outcome out;
  out.pass = within >= static_cast<int>(kConvergenceQuota * 20.0);
  out.detail = std::to_string(within) + "/20 feasible seeds below " +
               num(kConvergenceTol) + " within " +
               std::to_string(kConvergenceHorizon) + " iterations (worst " +
               std::to_string(worst_iterations) +
               "); demand-over-capacity seeds skipped: " + skip_note;
  return out;
}

// ---- criterion 5: inner-optimizer speedup -----------------------------------
int first_within(const std::vector<double>& history, double target) {
  for (std::size_t t = 0; t < history.size(); ++t)
    if (history[t] >= target) return static_cast<int>(t);
  return static_cast<int>(history.size());
}

double median_of(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return 0.5 * (v[(n - 1) / 2] + v[n / 2]);
}

Outcome inner_speedup() {
  std::vector<int> t_adaptive, t_frozen, t_gd;
  std::uint64_t seed = 50000;
  while (t_adaptive.size() < 100) {
    const Scenario s = one_on_one(++seed);
    const UeProfile& ue = s.ues[0];
    const UavProfile& uav = s.uavs[0];
    const double rate = uplink_rate_bps(ue, uav.position, s.channel);
    double star = 0.0;
    try {
      star = optimal_price(ue, rate, 1, uav, s.channel);
    } catch (const DegenerateEconomicsError&) {
      continue;  // no interior optimum to race toward
    }
    const PriceBounds pb = price_bounds(ue, rate);
    const double k_per_mb = compute_energy_per_mb(uav, s.channel, 1);
    const auto objective = [&](const std::vector<double>& x) {
      return (x[0] - k_per_mb) * optimal_offload(ue, x[0], rate);
    };
    const double best = objective({star});
    const double target = best - kWithin * std::abs(best);

    PsoConfig pso;
    pso.bounds = {{pb.lambda_min, pb.lambda_max}};
    pso.adaptive = true;
    const PsoResult adaptive = psopssl_maximize(objective, pso, seed);
    pso.adaptive = false;
    const PsoResult frozen = psopssl_maximize(objective, pso, seed);
    t_adaptive.push_back(first_within(adaptive.best_value_history, target));
    t_frozen.push_back(first_within(frozen.best_value_history, target));

    // gradient comparator on the same budget: fixed step, best point kept
    const double a = transmit_energy_per_mb(ue, rate) - ue.unit_energy_j_per_mb;
    const double step = 0.02 * (pb.lambda_max - pb.lambda_min);
    double lambda = 0.5 * (pb.lambda_min + pb.lambda_max);
    std::vector<double> gd_history{objective({lambda})};
    double gd_best = gd_history[0];
    for (int t = 0; t < pso.inner_iterations; ++t) {
      const double denom = a + lambda;
      const double grad =
          ue.satisfaction_coeff * (a + k_per_mb) / (denom * denom) - 1.0;
      lambda = std::clamp(lambda + step * grad, pb.lambda_min, pb.lambda_max);
      gd_best = std::max(gd_best, objective({lambda}));
      gd_history.push_back(gd_best);
    }
    t_gd.push_back(first_within(gd_history, target));
  }

  int wins = 0;
  for (std::size_t k = 0; k < t_adaptive.size(); ++k)
    if (t_adaptive[k] <= t_frozen[k]) ++wins;
  const double med_adaptive = median_of(t_adaptive);
  const double med_gd = median_of(t_gd);

  Outcome out;
  out.pass = wins >= static_cast<int>(kSpeedupQuota * 100.0) && med_gd >= med_adaptive;
  out.detail = "adaptive within 1% no later than frozen on " +
               std::to_string(wins) + "/100 problems (quota " +
               std::to_string(static_cast<int>(kSpeedupQuota * 100.0)) +
               "); median iterations adaptive " + num(med_adaptive) +
               " vs gradient " + num(med_gd);
  return out;
}

// ---- criterion 6: baseline ordering -----------------------------------------
GenerationConfig contested_config() {
  // Cheap, fast onboard compute and an expensive retention cost push every
  // best response toward full offload, so cluster loads actually contend for
  // the 60 MB cells and rebalancing has work to do.
  GenerationConfig cfg;
  cfg.ue_count = 20;
  cfg.uav_count = 4;
  cfg.total_data_mb = {10.0, 10.0};
  cfg.local_power_w = {0.05, 0.05};
  cfg.unit_energy_j_per_mb = {0.2, 0.25};
  cfg.compute_power_w = {0.2, 0.2};
  cfg.compute_capacity_cps = {5e9, 5e9};
  cfg.data_capacity_mb = {60.0, 60.0};
  return cfg;
}

bool has_overloaded_cluster(const Scenario& s, std::uint64_t seed) {
  const Clustering c = kmeans_place(s, mix_seed(seed, 1));
  for (std::size_t j = 0; j < c.members.size(); ++j) {
    double load = 0.0;
    for (int i : c.members[j]) load += s.ues[i].total_data_mb;
    if (load > s.uavs[j].data_capacity_mb) return true;
  }
  return false;
}

Outcome baseline_ordering() {
  const GenerationConfig cfg = contested_config();
  SolverConfig solver;
  solver.verify.offload_grid_points = 501;  // certificate precision is not
  solver.verify.price_grid_points = 801;    // under test here; keep this fast

  const std::vector<Algorithm> algos = {Algorithm::Cppo, Algorithm::NuCppo,
                                        Algorithm::Osrs, Algorithm::Psrs};
  std::vector<double> mean_con(4, 0.0), mean_ue(4, 0.0);
  int matched = 0;
  std::uint64_t seed = 0;
  while (matched < 20 && seed < 500) {
    ++seed;
    const Scenario s = generate(cfg, seed);
    if (!has_overloaded_cluster(s, seed)) continue;
    ++matched;
    for (std::size_t k = 0; k < algos.size(); ++k) {
      const SolveReport rep = solve_baseline(algos[k], s, solver, seed);
      mean_con[k] += rep.final_breakdown.controller_utility;
      mean_ue[k] += rep.final_breakdown.mean_ue_utility;
    }
  }
  for (double& v : mean_con) v /= matched;
  for (double& v : mean_ue) v /= matched;

  const auto ordered = [](double lhs, double rhs) {
    return lhs >= rhs - 1e-9 * std::max(1.0, std::abs(lhs));
  };
  const auto beats_by_margin = [](double lhs, double rhs) {
    return lhs - rhs >= kOrderingMargin * std::abs(lhs);
  };
  const bool chain_con = ordered(mean_con[0], mean_con[1]) &&
                         ordered(mean_con[1], std::max(mean_con[2], mean_con[3]));
  const bool chain_ue = ordered(mean_ue[0], mean_ue[1]) &&
                        ordered(mean_ue[1], std::max(mean_ue[2], mean_ue[3]));
  const bool margins = beats_by_margin(mean_con[0], mean_con[2]) &&
                       beats_by_margin(mean_con[0], mean_con[3]) &&
                       beats_by_margin(mean_ue[0], mean_ue[2]) &&
                       beats_by_margin(mean_ue[0], mean_ue[3]);

  Outcome out;
  out.pass = matched == 20 && chain_con && chain_ue && margins;
  out.detail = std::to_string(matched) +
               " contested seeds; controller means (cppo/nu-cppo/osrs/psrs) " +
               num(mean_con[0]) + "/" + num(mean_con[1]) + "/" +
               num(mean_con[2]) + "/" + num(mean_con[3]) + "; UE means " +
               num(mean_ue[0]) + "/" + num(mean_ue[1]) + "/" + num(mean_ue[2]) +
               "/" + num(mean_ue[3]) + "; margin floor " +
               num(kOrderingMargin * 100.0) + "%";
  return out;
}

// ---- criterion 7: placement and rebalancing invariants ----------------------
Outcome rebalance_invariants() {
  int checked = 0;
  int violations = 0;
  int infeasible_skipped = 0;
  int lloyd_violations = 0;
  std::uint64_t seed = 0;
  while (checked < 500) {
    ++seed;
    GenerationConfig cfg;
    cfg.ue_count = 10 + static_cast<int>(seed % 31);
    cfg.uav_count = 2 + static_cast<int>(seed % 5);
    const Scenario s = generate(cfg, 70000 + seed);

    std::mt19937_64 demand_rng(0xD00Du + seed);
    std::vector<double> demand(s.ue_count());
    double total = 0.0;
    for (int i = 0; i < s.ue_count(); ++i) {
      std::uniform_real_distribution<double> dist(0.0, s.ues[i].total_data_mb);
      demand[i] = dist(demand_rng);
      total += demand[i];
    }
    std::vector<double> capacity(s.uav_count());
    double fleet = 0.0;
    for (int j = 0; j < s.uav_count(); ++j) {
      capacity[j] = s.uavs[j].data_capacity_mb;
      fleet += capacity[j];
    }
    if (total > kLoadHeadroom * fleet) {
      ++infeasible_skipped;
      continue;
    }
    ++checked;

    const Clustering c = kmeans_place(s, 90000 + seed);
    bool ok = true;
    try {
      const Assignment a = capacity_rebalance(s, c, demand, capacity);
      std::vector<int> owner(s.ue_count(), -1);
      for (std::size_t j = 0; j < a.cluster_members.size(); ++j) {
        double load = 0.0;
        for (int i : a.cluster_members[j]) {
          if (owner[i] != -1) ok = false;  // one UAV per UE
          owner[i] = static_cast<int>(j);
          load += demand[i];
        }
        if (load > capacity[j] + kCapacitySlack) ok = false;
      }
      for (int i = 0; i < s.ue_count(); ++i)
        if (owner[i] == -1) ok = false;  // every UE is served
    } catch (const Error& e) {
      ok = false;  // guard tripped or a feasible instance was rejected
      std::cerr << "criterion 7: seed " << seed << " (I=" << s.ue_count()
                << ", J=" << s.uav_count() << ", load "
                << total / fleet << "): " << e.what() << '\n';
    }
    if (!ok) ++violations;

    if (checked <= 50) {  // Lloyd objective is monotone in the iteration budget
      double previous = std::numeric_limits<double>::infinity();
      for (int budget = 1; budget <= 6; ++budget) {
        const Clustering stage = kmeans_place(s, 90000 + seed, budget);
        const double ssd = within_cluster_ssd(stage, s);
        if (ssd > previous * (1.0 + 1e-12)) ++lloyd_violations;
        previous = ssd;
      }
    }
  }
  Outcome out;
  out.pass = violations == 0 && lloyd_violations == 0;
  out.detail = std::to_string(500 - violations) +
               "/500 feasible instances kept the partition and capacity bounds (" +
               std::to_string(infeasible_skipped) + " draws above " +
               num(kLoadHeadroom * 100.0) + "% fleet load skipped); " +
               std::to_string(lloyd_violations) + " Lloyd monotonicity violations";
  return out;
}

// ---- criterion 8: byte-identical reruns -------------------------------------
std::string file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "stackmec_acceptance_c8";
  fs::create_directories(dir);

  GenerationConfig cfg;
  cfg.ue_count = 8;
  cfg.uav_count = 2;
  const bool generator_ok =
      to_json_string(generate(cfg, 7)) == to_json_string(generate(cfg, 7));

  const Scenario s = generate(cfg, 7);
  int identical = 0;
  const int files = 3;
  for (int round = 0; round < 2; ++round) {
    const SolveReport rep = cppo_solve(s, SolverConfig{}, 7);
    const std::string tag = std::to_string(round);
    write_trace_csv(rep, dir / ("trace" + tag + ".csv"));
    write_ue_cross_section_csv(rep, s, dir / ("ue" + tag + ".csv"));
    write_controller_cross_section_csv(rep, s, dir / ("con" + tag + ".csv"));
  }
  if (file_bytes(dir / "trace0.csv") == file_bytes(dir / "trace1.csv")) ++identical;
  if (file_bytes(dir / "ue0.csv") == file_bytes(dir / "ue1.csv")) ++identical;
  if (file_bytes(dir / "con0.csv") == file_bytes(dir / "con1.csv")) ++identical;

  ExperimentConfig experiment;
  experiment.base = cfg;
  experiment.algorithms = {Algorithm::Cppo, Algorithm::Osrs};
  experiment.seeds = {1, 2, 3};
  ::setenv("STACKMEC_THREADS", "1", 1);
  write_compare_csv(run_comparison(experiment), false, "", dir / "cmp0.csv");
  ::setenv("STACKMEC_THREADS", "3", 1);
  write_compare_csv(run_comparison(experiment), false, "", dir / "cmp1.csv");
  ::unsetenv("STACKMEC_THREADS");
  const bool compare_ok =
      file_bytes(dir / "cmp0.csv") == file_bytes(dir / "cmp1.csv");
  fs::remove_all(dir);

  Outcome out;
  out.pass = generator_ok && identical == files && compare_ok;
  out.detail = std::string("generator rerun ") +
               (generator_ok ? "identical" : "DIFFERS") + "; " +
               std::to_string(identical) + "/" + std::to_string(files) +
               " solver CSVs byte-identical; threaded comparison " +
               (compare_ok ? "identical across 1 and 3 workers" : "DIFFERS");
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    Outcome (*check)();
  };
  const Criterion criteria[] = {
      {1, "follower best response matches grid search", follower_closed_form},
      {2, "leader price matches grid search on a concave objective", leader_closed_form},
      {3, "converged run is a certified equilibrium in both cross-sections", equilibrium_cross_check},
      {4, "default scenarios converge within the horizon", convergence_horizon},
      {5, "adaptive swarm reaches the optimum no later than its rivals", inner_speedup},
      {6, "full loop dominates its ablation and both baselines", baseline_ordering},
      {7, "placement keeps partition, capacity, and Lloyd invariants", rebalance_invariants},
      {8, "identical inputs reproduce byte-identical outputs", determinism},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome result;
    try {
      result = c.check();
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = std::string("unexpected exception: ") + e.what();
    }
    if (!result.pass) ++failed;
    std::cout << (result.pass ? "PASS" : "FAIL") << ": criterion " << c.id
              << " - " << c.title << " (" << result.detail << ")\n";
  }
  std::cout << (8 - failed) << "/8 criteria passed\n";
  return failed == 0 ? 0 : 1;
}
