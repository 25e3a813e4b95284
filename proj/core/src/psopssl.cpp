#include <algorithm>
#include <cmath>
#include <random>

#include "stackmec/errors.hpp"
#include "stackmec/rng.hpp"
#include "stackmec/solver.hpp"

namespace stackmec {
namespace {

void check_pso_config(const PsoConfig& cfg) {
  if (cfg.swarm_size < 2) throw ConfigError("swarm_size must be >= 2");
  if (cfg.inner_iterations < 1) throw ConfigError("inner_iterations must be >= 1");
  if (cfg.bounds.empty()) throw ConfigError("bounds must be non-empty");
  for (const auto& [lo, hi] : cfg.bounds) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
      throw ConfigError("bounds must be finite with min <= max");
    }
  }
  if (cfg.w_floor < 0.0) throw ConfigError("w_floor must be >= 0");
  if (cfg.adaptation_step < 0.0) throw ConfigError("adaptation_step must be >= 0");
}

}  // namespace

PsoResult psopssl_maximize(
    const std::function<double(const std::vector<double>&)>& objective,
    const PsoConfig& cfg, std::uint64_t seed, const PsoObserver& observer) {
  check_pso_config(cfg);
  const int n = cfg.swarm_size;
  const int dims = static_cast<int>(cfg.bounds.size());
  std::mt19937_64 gen(seed);

  ParticleState st;
  st.positions.assign(n, std::vector<double>(dims, 0.0));
  st.velocities.assign(n, std::vector<double>(dims, 0.0));
  st.personal_best.assign(n, std::vector<double>(dims, 0.0));
  st.personal_best_value.assign(n, 0.0);
  st.s1.assign(n, 0);
  st.inertia.assign(n, cfg.w0);

  for (int p = 0; p < n; ++p) {
    for (int d = 0; d < dims; ++d) {
      st.positions[p][d] =
          uniform_in(gen, cfg.bounds[d].first, cfg.bounds[d].second);
    }
    st.personal_best[p] = st.positions[p];
    st.personal_best_value[p] = objective(st.positions[p]);
  }
  int best_particle = 0;
  for (int p = 1; p < n; ++p) {
    if (st.personal_best_value[p] > st.personal_best_value[best_particle]) {
      best_particle = p;
    }
  }
  st.global_best = st.personal_best[best_particle];
  st.global_best_value = st.personal_best_value[best_particle];

  PsoResult result;
  result.best_value_history.reserve(cfg.inner_iterations + 1);
  result.best_value_history.push_back(st.global_best_value);
  if (observer) observer(st);

  for (int tau = 1; tau <= cfg.inner_iterations; ++tau) {
    st.iteration = tau;
    bool global_changed = false;

    for (int p = 0; p < n; ++p) {
      // One r1/r2 pair per particle per iteration, shared across dimensions.
      const double r1 = uniform_double(gen);
      const double r2 = uniform_double(gen);
      const double w = cfg.adaptive ? st.inertia[p] : cfg.w0;
      const double c1 =
          cfg.adaptive ? cfg.c1_0 + cfg.adaptation_step * st.s1[p] : cfg.c1_0;
      const double c2 =
          cfg.adaptive ? cfg.c2_0 + cfg.adaptation_step * st.s2 : cfg.c2_0;

      bool personal_changed = false;
      for (int d = 0; d < dims; ++d) {
        st.velocities[p][d] =
            w * st.velocities[p][d] +
            c1 * r1 * (st.personal_best[p][d] - st.positions[p][d]) +
            c2 * r2 * (st.global_best[d] - st.positions[p][d]);
        st.positions[p][d] =
            std::clamp(st.positions[p][d] + st.velocities[p][d],
                       cfg.bounds[d].first, cfg.bounds[d].second);
      }
      const double value = objective(st.positions[p]);
      if (value > st.personal_best_value[p]) {
        st.personal_best[p] = st.positions[p];
        st.personal_best_value[p] = value;
        personal_changed = true;
        if (value > st.global_best_value) {
          st.global_best = st.positions[p];
          st.global_best_value = value;
          global_changed = true;
        }
      }

      st.s1[p] = personal_changed ? 0 : st.s1[p] + 1;
      if (cfg.adaptive && !personal_changed) {
        st.inertia[p] =
            std::max(cfg.w_floor, st.inertia[p] - cfg.adaptation_step * st.s1[p]);
      }
    }

    st.s2 = global_changed ? 0 : st.s2 + 1;
    result.best_value_history.push_back(st.global_best_value);
    if (observer) observer(st);
  }

  result.best_position = st.global_best;
  result.best_value = st.global_best_value;
  return result;
}

}  // namespace stackmec
