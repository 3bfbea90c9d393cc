#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "llw/materials.hpp"
#include "llw/mode_pipeline.hpp"

namespace llw {

/// Raised when a material name cannot be resolved against the presets plus
/// the config-file material database.
struct LookupError : Error {
  using Error::Error;
};

struct FrequencyRange {
  double min_mhz = 0.0;  // 0 means "derive from max/steps"
  double max_mhz = 30.0 / (2.0 * 3.141592653589793);
  int steps = 150;
};

struct SweepConfig {
  std::vector<Material> materials;  // presets plus config-file entries
  std::string side_a_name = "aluminium";
  std::string guide_name = "epoxy";
  std::string side_b_name = "aluminium";
  double half_thickness_mm = 0.5;
  FrequencyRange frequency;
  SweepSettings settings;
};

/// Parse a config JSON document, materializing defaults. Throws ConfigError
/// on malformed or invalid input.
SweepConfig parse_config(const nlohmann::json& doc);
SweepConfig load_config(const std::string& path);

/// Serialize with all defaults materialized (round-trip stable).
nlohmann::json config_to_json(const SweepConfig& cfg);

const Material& find_material(const SweepConfig& cfg, const std::string& name);
TriLayerSystem build_system(const SweepConfig& cfg);

/// Angular frequency grid (rad/us), strictly increasing.
std::vector<double> omega_grid(const SweepConfig& cfg);

}  // namespace llw
