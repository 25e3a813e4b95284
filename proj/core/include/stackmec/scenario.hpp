#ifndef STACKMEC_SCENARIO_HPP
#define STACKMEC_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stackmec/vec3.hpp"

namespace stackmec {

/// Ground device with a computation task to split between local execution
/// and offloading. Position has z == 0.
struct UeProfile {
  int id = 0;
  Vec3 position;
  double total_data_mb = 0.0;         ///< task size G_i
  double transmit_power_w = 0.0;      ///< uplink transmission power q_i
  double local_power_w = 0.0;         ///< power drawn while transmitting, p_i
  double unit_energy_j_per_mb = 0.0;  ///< local computation energy per MB
  double satisfaction_coeff = 0.0;    ///< weight on the log satisfaction term

  friend bool operator==(const UeProfile&, const UeProfile&) = default;
};

/// UAV-mounted edge server deployed at corridor height (position.z == H).
struct UavProfile {
  int id = 0;
  Vec3 position;
  double compute_capacity_cps = 0.0;  ///< CPU cycles per second f_j
  double compute_power_w = 0.0;       ///< CPU power while computing
  double hover_power_w = 0.0;         ///< minimum hover power
  double power_efficiency = 0.0;      ///< in (0, 1]
  double energy_budget_j = 0.0;       ///< battery budget
  double data_capacity_mb = 0.0;      ///< maximum served load D_j

  friend bool operator==(const UavProfile&, const UavProfile&) = default;
};

struct ChannelConstants {
  double bandwidth_hz = 1e6;           ///< per UE-UAV link
  double noise_power_w = 1e-9;
  double path_loss_exponent = 2.0;
  double encode_cycles_per_byte = 1900.0;

  friend bool operator==(const ChannelConstants&, const ChannelConstants&) = default;
};

/// A full problem instance. Immutable after construction.
struct Scenario {
  std::vector<UeProfile> ues;
  std::vector<UavProfile> uavs;
  ChannelConstants channel;
  std::uint64_t seed = 0;  ///< generation seed, recorded for reproducibility

  int ue_count() const { return static_cast<int>(ues.size()); }
  int uav_count() const { return static_cast<int>(uavs.size()); }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Closed interval for a uniformly drawn parameter.
struct Range {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const Range&, const Range&) = default;
};

/// Parameter distributions for scenario generation. Every per-entity value is
/// drawn independently and uniformly from its range; collapse a range to a
/// point to pin the value.
struct GenerationConfig {
  int ue_count = 0;
  int uav_count = 0;

  double area_width_m = 1000.0;   ///< UE x drawn in [0, width]
  double area_depth_m = 1000.0;   ///< UE y drawn in [0, depth]
  double corridor_height_m = 100.0;

  Range total_data_mb{10.0, 50.0};
  Range transmit_power_w{0.1, 0.1};
  Range local_power_w{0.1, 0.1};
  Range unit_energy_j_per_mb{0.2, 0.5};
  Range satisfaction_coeff{40.0, 40.0};

  Range compute_capacity_cps{1e9, 5e9};
  Range compute_power_w{0.1, 0.5};
  Range hover_power_w{100.0, 100.0};
  Range power_efficiency{0.8, 0.8};
  Range energy_budget_j{5e5, 5e5};
  Range data_capacity_mb{200.0, 200.0};

  ChannelConstants channel;
};

/// Draws a scenario from the configured distributions. Pure in (config, seed):
/// identical inputs give bit-identical scenarios.
/// Throws ConfigError on inverted ranges, zero entity counts, or negative area.
Scenario generate(const GenerationConfig& config, std::uint64_t seed);

/// Checks every profile invariant; throws ValidationError naming the field.
void validate(const Scenario& s);

/// Writes the scenario as a versioned JSON document. load(save(s)) == s.
void save(const Scenario& s, const std::filesystem::path& path);

/// Parses and validates a scenario file. Throws SchemaError on malformed
/// documents and ValidationError on invariant violations.
Scenario load(const std::filesystem::path& path);

/// Serialized form of save(), exposed for tests and tooling.
std::string to_json_string(const Scenario& s);
Scenario from_json_string(const std::string& text);

/// Parses a GenerationConfig from a JSON document (the `generate --config`
/// file format). Missing fields keep their defaults.
GenerationConfig generation_config_from_json(const std::string& text);

}  // namespace stackmec

#endif  // STACKMEC_SCENARIO_HPP
