#pragma once

#include <string>

namespace llw {

// Exit codes shared by the CLI subcommands.
enum ExitCode {
  kOk = 0,
  kError = 1,
  kConfigError = 2,
  kLookupError = 3,
  kPartialSweep = 4,
  kNotFound = 5,
  kValidationFailed = 6,
};

int cli_sweep(const std::string& config_path, const std::string& out_dir,
              int jobs_override = -1);

int cli_modeshape(const std::string& data_dir, double freq_mhz,
                  int mode_id = -1, const std::string& case_filter = "",
                  double y_extent_mm = -1.0);

int cli_validate(const std::string& data_dir);

int cli_materials_list(const std::string& config_path = "");

}  // namespace llw
