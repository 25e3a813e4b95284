#include "stackmec/scenario.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "stackmec/errors.hpp"
#include "stackmec/rng.hpp"

namespace stackmec {
namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

void check_range(const Range& r, const char* name) {
  if (!(r.lo <= r.hi)) {
    throw ConfigError(std::string(name) + ": range minimum exceeds maximum");
  }
}

void check_config(const GenerationConfig& cfg) {
  if (cfg.ue_count < 1) throw ConfigError("ue_count must be at least 1");
  if (cfg.uav_count < 1) throw ConfigError("uav_count must be at least 1");
  if (cfg.area_width_m < 0 || cfg.area_depth_m < 0) {
    throw ConfigError("area bounds must be non-negative");
  }
  if (cfg.corridor_height_m <= 0) {
    throw ConfigError("corridor_height_m must be positive");
  }
  check_range(cfg.total_data_mb, "total_data_mb");
  check_range(cfg.transmit_power_w, "transmit_power_w");
  check_range(cfg.local_power_w, "local_power_w");
  check_range(cfg.unit_energy_j_per_mb, "unit_energy_j_per_mb");
  check_range(cfg.satisfaction_coeff, "satisfaction_coeff");
  check_range(cfg.compute_capacity_cps, "compute_capacity_cps");
  check_range(cfg.compute_power_w, "compute_power_w");
  check_range(cfg.hover_power_w, "hover_power_w");
  check_range(cfg.power_efficiency, "power_efficiency");
  check_range(cfg.energy_budget_j, "energy_budget_j");
  check_range(cfg.data_capacity_mb, "data_capacity_mb");
}

void require_positive(double v, const char* field) {
  if (!(v > 0.0)) throw ValidationError(field, "must be positive");
}

}  // namespace

Scenario generate(const GenerationConfig& cfg, std::uint64_t seed) {
  check_config(cfg);

  std::mt19937_64 gen(seed);
  Scenario s;
  s.seed = seed;
  s.channel = cfg.channel;

  s.ues.reserve(cfg.ue_count);
  for (int i = 0; i < cfg.ue_count; ++i) {
    UeProfile ue;
    ue.id = i;
    ue.position.x = uniform_in(gen, 0.0, cfg.area_width_m);
    ue.position.y = uniform_in(gen, 0.0, cfg.area_depth_m);
    ue.position.z = 0.0;
    ue.total_data_mb = uniform_in(gen, cfg.total_data_mb.lo, cfg.total_data_mb.hi);
    ue.transmit_power_w = uniform_in(gen, cfg.transmit_power_w.lo, cfg.transmit_power_w.hi);
    ue.local_power_w = uniform_in(gen, cfg.local_power_w.lo, cfg.local_power_w.hi);
    ue.unit_energy_j_per_mb =
        uniform_in(gen, cfg.unit_energy_j_per_mb.lo, cfg.unit_energy_j_per_mb.hi);
    ue.satisfaction_coeff =
        uniform_in(gen, cfg.satisfaction_coeff.lo, cfg.satisfaction_coeff.hi);
    s.ues.push_back(ue);
  }

  s.uavs.reserve(cfg.uav_count);
  for (int j = 0; j < cfg.uav_count; ++j) {
    UavProfile uav;
    uav.id = j;
    uav.position.x = uniform_in(gen, 0.0, cfg.area_width_m);
    uav.position.y = uniform_in(gen, 0.0, cfg.area_depth_m);
    uav.position.z = cfg.corridor_height_m;
    uav.compute_capacity_cps =
        uniform_in(gen, cfg.compute_capacity_cps.lo, cfg.compute_capacity_cps.hi);
    uav.compute_power_w = uniform_in(gen, cfg.compute_power_w.lo, cfg.compute_power_w.hi);
    uav.hover_power_w = uniform_in(gen, cfg.hover_power_w.lo, cfg.hover_power_w.hi);
    uav.power_efficiency =
        uniform_in(gen, cfg.power_efficiency.lo, cfg.power_efficiency.hi);
    uav.energy_budget_j = uniform_in(gen, cfg.energy_budget_j.lo, cfg.energy_budget_j.hi);
    uav.data_capacity_mb =
        uniform_in(gen, cfg.data_capacity_mb.lo, cfg.data_capacity_mb.hi);
    s.uavs.push_back(uav);
  }

  validate(s);
  return s;
}

void validate(const Scenario& s) {
  if (s.ues.empty()) throw ValidationError("ues", "must be non-empty");
  if (s.uavs.empty()) throw ValidationError("uavs", "must be non-empty");

  for (std::size_t i = 0; i < s.ues.size(); ++i) {
    const UeProfile& ue = s.ues[i];
    if (ue.id != static_cast<int>(i)) {
      throw ValidationError("ues.id", "ids must be dense 0..I-1");
    }
    require_positive(ue.total_data_mb, "total_data");
    require_positive(ue.transmit_power_w, "transmit_power");
    require_positive(ue.local_power_w, "local_power");
    require_positive(ue.unit_energy_j_per_mb, "unit_energy");
    require_positive(ue.satisfaction_coeff, "satisfaction_coeff");
    if (ue.position.z != 0.0) {
      throw ValidationError("ues.position", "UE z coordinate must be 0");
    }
  }
  for (std::size_t j = 0; j < s.uavs.size(); ++j) {
    const UavProfile& uav = s.uavs[j];
    if (uav.id != static_cast<int>(j)) {
      throw ValidationError("uavs.id", "ids must be dense 0..J-1");
    }
    require_positive(uav.compute_capacity_cps, "compute_capacity");
    require_positive(uav.compute_power_w, "compute_power");
    require_positive(uav.hover_power_w, "hover_power");
    require_positive(uav.energy_budget_j, "energy_budget");
    require_positive(uav.data_capacity_mb, "data_capacity");
    if (!(uav.power_efficiency > 0.0 && uav.power_efficiency <= 1.0)) {
      throw ValidationError("power_efficiency", "must lie in (0, 1]");
    }
    if (!(uav.position.z > 0.0)) {
      throw ValidationError("uavs.position", "UAV z coordinate must be positive");
    }
  }

  require_positive(s.channel.bandwidth_hz, "bandwidth");
  require_positive(s.channel.noise_power_w, "noise_power");
  require_positive(s.channel.path_loss_exponent, "path_loss_exponent");
  require_positive(s.channel.encode_cycles_per_byte, "encode_coeff");
}

namespace {

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from_json(const json& j, const char* field) {
  if (!j.is_array() || j.size() != 3) {
    throw SchemaError(std::string(field) + ": expected [x, y, z]");
  }
  return Vec3{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

double num(const json& obj, const char* field) {
  if (!obj.contains(field)) {
    throw SchemaError(std::string("missing field: ") + field);
  }
  const json& v = obj.at(field);
  if (!v.is_number()) {
    throw SchemaError(std::string(field) + ": expected a number");
  }
  return v.get<double>();
}

}  // namespace

std::string to_json_string(const Scenario& s) {
  json doc;
  doc["version"] = kSchemaVersion;
  doc["seed"] = s.seed;
  doc["channel"] = {
      {"bandwidth_hz", s.channel.bandwidth_hz},
      {"noise_power_w", s.channel.noise_power_w},
      {"path_loss_exponent", s.channel.path_loss_exponent},
      {"encode_cycles_per_byte", s.channel.encode_cycles_per_byte},
  };
  doc["ues"] = json::array();
  for (const UeProfile& ue : s.ues) {
    doc["ues"].push_back({
        {"id", ue.id},
        {"position", vec_to_json(ue.position)},
        {"total_data_mb", ue.total_data_mb},
        {"transmit_power_w", ue.transmit_power_w},
        {"local_power_w", ue.local_power_w},
        {"unit_energy_j_per_mb", ue.unit_energy_j_per_mb},
        {"satisfaction_coeff", ue.satisfaction_coeff},
    });
  }
  doc["uavs"] = json::array();
  for (const UavProfile& uav : s.uavs) {
    doc["uavs"].push_back({
        {"id", uav.id},
        {"position", vec_to_json(uav.position)},
        {"compute_capacity_cps", uav.compute_capacity_cps},
        {"compute_power_w", uav.compute_power_w},
        {"hover_power_w", uav.hover_power_w},
        {"power_efficiency", uav.power_efficiency},
        {"energy_budget_j", uav.energy_budget_j},
        {"data_capacity_mb", uav.data_capacity_mb},
    });
  }
  return doc.dump(2) + "\n";
}

Scenario from_json_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("top level must be an object");
  if (!doc.contains("version")) throw SchemaError("missing field: version");
  if (doc["version"].get<int>() != kSchemaVersion) {
    throw SchemaError("unsupported schema version " + doc["version"].dump());
  }
  if (!doc.contains("seed")) throw SchemaError("missing field: seed");
  if (!doc.contains("channel")) throw SchemaError("missing field: channel");
  if (!doc.contains("ues") || !doc["ues"].is_array()) {
    throw SchemaError("missing field: ues");
  }
  if (!doc.contains("uavs") || !doc["uavs"].is_array()) {
    throw SchemaError("missing field: uavs");
  }

  Scenario s;
  s.seed = doc["seed"].get<std::uint64_t>();
  const json& ch = doc["channel"];
  s.channel.bandwidth_hz = num(ch, "bandwidth_hz");
  s.channel.noise_power_w = num(ch, "noise_power_w");
  s.channel.path_loss_exponent = num(ch, "path_loss_exponent");
  s.channel.encode_cycles_per_byte = num(ch, "encode_cycles_per_byte");

  for (const json& u : doc["ues"]) {
    UeProfile ue;
    ue.id = static_cast<int>(num(u, "id"));
    ue.position = vec_from_json(u.contains("position") ? u["position"] : json(),
                                "ues.position");
    ue.total_data_mb = num(u, "total_data_mb");
    ue.transmit_power_w = num(u, "transmit_power_w");
    ue.local_power_w = num(u, "local_power_w");
    ue.unit_energy_j_per_mb = num(u, "unit_energy_j_per_mb");
    ue.satisfaction_coeff = num(u, "satisfaction_coeff");
    s.ues.push_back(ue);
  }
  for (const json& u : doc["uavs"]) {
    UavProfile uav;
    uav.id = static_cast<int>(num(u, "id"));
    uav.position = vec_from_json(u.contains("position") ? u["position"] : json(),
                                 "uavs.position");
    uav.compute_capacity_cps = num(u, "compute_capacity_cps");
    uav.compute_power_w = num(u, "compute_power_w");
    uav.hover_power_w = num(u, "hover_power_w");
    uav.power_efficiency = num(u, "power_efficiency");
    uav.energy_budget_j = num(u, "energy_budget_j");
    uav.data_capacity_mb = num(u, "data_capacity_mb");
    s.uavs.push_back(uav);
  }

  validate(s);
  return s;
}

void save(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path.string());
  out << to_json_string(s);
  if (!out) throw Error("write failed: " + path.string());
}

Scenario load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_string(buf.str());
}

namespace {

Range range_from_json(const json& j, const char* field) {
  if (j.is_number()) {
    const double v = j.get<double>();
    return Range{v, v};
  }
  if (j.is_array() && j.size() == 2) {
    return Range{j[0].get<double>(), j[1].get<double>()};
  }
  throw SchemaError(std::string(field) + ": expected a number or [lo, hi]");
}

void maybe_range(const json& doc, const char* field, Range& out) {
  if (doc.contains(field)) out = range_from_json(doc.at(field), field);
}

void maybe_num(const json& doc, const char* field, double& out) {
  if (doc.contains(field)) out = doc.at(field).get<double>();
}

}  // namespace

GenerationConfig generation_config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("top level must be an object");

  GenerationConfig cfg;
  if (doc.contains("ue_count")) cfg.ue_count = doc["ue_count"].get<int>();
  if (doc.contains("uav_count")) cfg.uav_count = doc["uav_count"].get<int>();
  maybe_num(doc, "area_width_m", cfg.area_width_m);
  maybe_num(doc, "area_depth_m", cfg.area_depth_m);
  maybe_num(doc, "corridor_height_m", cfg.corridor_height_m);
  maybe_range(doc, "total_data_mb", cfg.total_data_mb);
  maybe_range(doc, "transmit_power_w", cfg.transmit_power_w);
  maybe_range(doc, "local_power_w", cfg.local_power_w);
  maybe_range(doc, "unit_energy_j_per_mb", cfg.unit_energy_j_per_mb);
  maybe_range(doc, "satisfaction_coeff", cfg.satisfaction_coeff);
  maybe_range(doc, "compute_capacity_cps", cfg.compute_capacity_cps);
  maybe_range(doc, "compute_power_w", cfg.compute_power_w);
  maybe_range(doc, "hover_power_w", cfg.hover_power_w);
  maybe_range(doc, "power_efficiency", cfg.power_efficiency);
  maybe_range(doc, "energy_budget_j", cfg.energy_budget_j);
  maybe_range(doc, "data_capacity_mb", cfg.data_capacity_mb);
  if (doc.contains("channel")) {
    const json& ch = doc["channel"];
    maybe_num(ch, "bandwidth_hz", cfg.channel.bandwidth_hz);
    maybe_num(ch, "noise_power_w", cfg.channel.noise_power_w);
    maybe_num(ch, "path_loss_exponent", cfg.channel.path_loss_exponent);
    maybe_num(ch, "encode_cycles_per_byte", cfg.channel.encode_cycles_per_byte);
  }
  return cfg;
}

}  // namespace stackmec
