#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "llw/config.hpp"
#include "llw/mode_pipeline.hpp"

namespace llw {

struct DatasetRow {
  int id = 0;
  double frequency = 0.0;       // MHz
  double omega = 0.0;           // rad/us
  double re_kx = 0.0;           // rad/mm
  double im_kx = 0.0;           // Np/mm
  double phase_velocity = 0.0;  // km/s
  int case_index = 0;
  std::string case_id;
  double interface_residual = 0.0;
  double backward_error = 0.0;
  bool branch_point = false;
};

struct DispersionDataset {
  std::vector<DatasetRow> rows;
  std::vector<FailedPoint> failures;
  std::string config_text;  // serialized config (defaults applied)
  std::string config_hash;
  std::string timestamp;
};

DispersionDataset make_dataset(const SweepResult& result,
                               const SweepConfig& cfg);

void write_csv(const DispersionDataset& ds, const std::string& path);
void write_json(const DispersionDataset& ds, const std::string& path);
DispersionDataset load_dataset(const std::string& path);

/// Emit plot_dispersion.py and plot_attenuation.py next to dispersion.csv.
void write_plot_scripts(const std::string& dir);
void write_modeshape_plot_script(const std::string& dir);

}  // namespace llw
