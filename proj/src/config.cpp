#include "llw/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numbers>

namespace llw {

namespace {

using nlohmann::json;

Complex complex_from_json(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2) {
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
  throw ConfigError("complex values must be a number or [re, im]");
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

SweepConfig parse_config(const nlohmann::json& doc) {
  SweepConfig cfg;
  cfg.materials = material_presets();
  try {
    if (doc.contains("materials")) {
      for (const auto& m : doc.at("materials")) {
        Material mat(m.at("name").get<std::string>(),
                     m.at("rho").get<double>(), m.at("c_l").get<double>(),
                     m.at("c_t").get<double>());
        // A config entry with a preset's name overrides the preset, so a
        // serialized config (which lists the presets) round-trips cleanly.
        auto it = std::find_if(cfg.materials.begin(), cfg.materials.end(),
                               [&](const Material& p) {
                                 return p.name == mat.name;
                               });
        if (it != cfg.materials.end()) {
          *it = std::move(mat);
        } else {
          cfg.materials.push_back(std::move(mat));
        }
      }
    }
    if (doc.contains("system")) {
      const auto& s = doc.at("system");
      cfg.side_a_name = s.value("side_a", cfg.side_a_name);
      cfg.guide_name = s.value("guide", cfg.guide_name);
      cfg.side_b_name = s.value("side_b", cfg.side_b_name);
      cfg.half_thickness_mm =
          s.value("half_thickness_mm", cfg.half_thickness_mm);
    }
    if (doc.contains("frequency")) {
      const auto& f = doc.at("frequency");
      cfg.frequency.min_mhz = f.value("min_mhz", 0.0);
      cfg.frequency.max_mhz = f.value("max_mhz", cfg.frequency.max_mhz);
      cfg.frequency.steps = f.value("steps", cfg.frequency.steps);
    }
    cfg.settings.n_points = doc.value("n_points", 50);
    if (doc.contains("zeta")) {
      const auto& z = doc.at("zeta");
      if (z.contains("evanescent")) {
        cfg.settings.zeta.evanescent = complex_from_json(z.at("evanescent"));
      }
      if (z.contains("leaky")) {
        cfg.settings.zeta.leaky = complex_from_json(z.at("leaky"));
      }
    }
    if (doc.contains("filters")) {
      const auto& f = doc.at("filters");
      FilterConfig& fc = cfg.settings.filters;
      fc.max_attenuation = f.value("max_attenuation_np_mm",
                                   fc.max_attenuation);
      fc.residual_tol = f.value("interface_residual_tol", fc.residual_tol);
      fc.backward_tol = f.value("backward_error_tol", fc.backward_tol);
      fc.bulk_tol = f.value("bulk_tol", fc.bulk_tol);
      fc.edge_tol = f.value("edge_tol", fc.edge_tol);
      fc.neg_att_clamp = f.value("neg_attenuation_clamp", fc.neg_att_clamp);
      fc.dedup_tol = f.value("dedup_tol", fc.dedup_tol);
    }
    if (doc.contains("solver")) {
      const auto& s = doc.at("solver");
      const std::string method = s.value("method", std::string("auto"));
      if (method == "auto") {
        cfg.settings.solver.method = SolveMethod::automatic;
      } else if (method == "pencil") {
        cfg.settings.solver.method = SolveMethod::pencil;
      } else if (method == "reciprocal") {
        cfg.settings.solver.method = SolveMethod::reciprocal;
      } else {
        throw ConfigError("unknown solver method '" + method + "'");
      }
      cfg.settings.solver.infinite_guard =
          s.value("infinite_guard", cfg.settings.solver.infinite_guard);
    }
    cfg.settings.jobs = doc.value("jobs", 1);
    cfg.settings.equilibrate = doc.value("equilibrate", true);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }

  if (cfg.frequency.steps < 1) {
    throw ConfigError("frequency.steps must be at least 1");
  }
  if (!(cfg.frequency.max_mhz > 0.0)) {
    throw ConfigError("frequency.max_mhz must be positive");
  }
  if (cfg.frequency.min_mhz < 0.0 ||
      cfg.frequency.min_mhz > cfg.frequency.max_mhz) {
    throw ConfigError("frequency.min_mhz must lie in [0, max_mhz]");
  }
  if (cfg.settings.n_points < 8) {
    throw ConfigError("n_points must be at least 8");
  }
  if (cfg.settings.jobs < 1) {
    throw ConfigError("jobs must be at least 1");
  }
  return cfg;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

nlohmann::json config_to_json(const SweepConfig& cfg) {
  json doc;
  json mats = json::array();
  for (const auto& m : cfg.materials) {
    mats.push_back(
        {{"name", m.name}, {"rho", m.rho}, {"c_l", m.c_l}, {"c_t", m.c_t}});
  }
  doc["materials"] = mats;
  doc["system"] = {{"side_a", cfg.side_a_name},
                   {"guide", cfg.guide_name},
                   {"side_b", cfg.side_b_name},
                   {"half_thickness_mm", cfg.half_thickness_mm}};
  doc["frequency"] = {{"min_mhz", cfg.frequency.min_mhz},
                      {"max_mhz", cfg.frequency.max_mhz},
                      {"steps", cfg.frequency.steps}};
  doc["n_points"] = cfg.settings.n_points;
  doc["zeta"] = {{"evanescent", complex_to_json(cfg.settings.zeta.evanescent)},
                 {"leaky", complex_to_json(cfg.settings.zeta.leaky)}};
  const FilterConfig& fc = cfg.settings.filters;
  doc["filters"] = {{"max_attenuation_np_mm", fc.max_attenuation},
                    {"interface_residual_tol", fc.residual_tol},
                    {"backward_error_tol", fc.backward_tol},
                    {"bulk_tol", fc.bulk_tol},
                    {"edge_tol", fc.edge_tol},
                    {"neg_attenuation_clamp", fc.neg_att_clamp},
                    {"dedup_tol", fc.dedup_tol}};
  const char* method = cfg.settings.solver.method == SolveMethod::pencil
                           ? "pencil"
                       : cfg.settings.solver.method == SolveMethod::reciprocal
                           ? "reciprocal"
                           : "auto";
  doc["solver"] = {{"method", method},
                   {"infinite_guard", cfg.settings.solver.infinite_guard}};
  doc["jobs"] = cfg.settings.jobs;
  doc["equilibrate"] = cfg.settings.equilibrate;
  return doc;
}

const Material& find_material(const SweepConfig& cfg,
                              const std::string& name) {
  for (const Material& m : cfg.materials) {
    if (m.name == name) return m;
  }
  throw LookupError("unknown material '" + name + "'");
}

TriLayerSystem build_system(const SweepConfig& cfg) {
  return TriLayerSystem(find_material(cfg, cfg.side_a_name),
                        find_material(cfg, cfg.guide_name),
                        find_material(cfg, cfg.side_b_name),
                        cfg.half_thickness_mm);
}

std::vector<double> omega_grid(const SweepConfig& cfg) {
  const int steps = cfg.frequency.steps;
  const double f_max = cfg.frequency.max_mhz;
  const double f_min =
      cfg.frequency.min_mhz > 0.0 ? cfg.frequency.min_mhz : f_max / steps;
  std::vector<double> grid;
  grid.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    const double f = steps == 1
                         ? f_max
                         : f_min + (f_max - f_min) * i / (steps - 1);
    grid.push_back(2.0 * std::numbers::pi * f);
  }
  return grid;
}

}  // namespace llw
