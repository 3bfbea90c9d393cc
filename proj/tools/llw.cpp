#include <CLI/CLI.hpp>
#include <string>

#include "llw/cli_commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Leaky Lamb wave dispersion solver for an elastic plate "
               "embedded between elastic half-spaces"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  int jobs = -1;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run a frequency sweep and write dispersion data");
  sweep->add_option("--config", config_path, "JSON config file")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--out", out_dir, "Output directory");
  sweep->add_option("--jobs", jobs, "Worker thread count override");

  std::string data_dir = "out";
  double freq_mhz = 0.0;
  int mode_id = -1;
  std::string case_filter;
  double y_extent = -1.0;
  CLI::App* modeshape = app.add_subcommand(
      "modeshape", "Reconstruct a displacement profile from sweep output");
  modeshape->add_option("--data", data_dir, "Directory holding modes.json");
  modeshape->add_option("--freq", freq_mhz, "Frequency in MHz")->required();
  modeshape->add_option("--mode", mode_id, "Mode id from dispersion data");
  modeshape->add_option("--case", case_filter, "Radiation-case id filter");
  modeshape->add_option("--extent", y_extent,
                        "Half-space plot extent in mm (default 5d)");

  std::string validate_dir = "out";
  CLI::App* validate = app.add_subcommand(
      "validate", "Check sweep output against the partial-wave determinant");
  validate->add_option("--data", validate_dir, "Directory holding modes.json");

  CLI::App* materials = app.add_subcommand("materials", "Material utilities");
  std::string materials_config;
  CLI::App* materials_list =
      materials->add_subcommand("list", "List known materials");
  materials_list->add_option("--config", materials_config,
                             "Also include materials from this config file");
  materials->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  if (sweep->parsed()) return llw::cli_sweep(config_path, out_dir, jobs);
  if (modeshape->parsed()) {
    return llw::cli_modeshape(data_dir, freq_mhz, mode_id, case_filter,
                              y_extent);
  }
  if (validate->parsed()) return llw::cli_validate(validate_dir);
  if (materials->parsed()) return llw::cli_materials_list(materials_config);
  return llw::kError;
}
