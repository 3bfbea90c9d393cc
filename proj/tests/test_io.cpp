#include <doctest/doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "llw/cli_commands.hpp"
#include "llw/config.hpp"
#include "llw/dataset.hpp"

using namespace llw;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("llw_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(LLW_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

const char* kTinyConfig = R"({
  "frequency": {"min_mhz": 1.0, "max_mhz": 1.06, "steps": 3},
  "n_points": 30
})";

}  // namespace

TEST_SUITE("io") {

TEST_CASE("config defaults and round trip") {
  const SweepConfig cfg = parse_config(nlohmann::json::object());
  CHECK(cfg.side_a_name == "aluminium");
  CHECK(cfg.guide_name == "epoxy");
  CHECK(cfg.half_thickness_mm == 0.5);
  CHECK(cfg.frequency.steps == 150);
  // the default band ends at omega = 30 rad/us
  CHECK(cfg.frequency.max_mhz == doctest::Approx(30.0 / (2.0 * 3.14159265358979)));
  CHECK(cfg.settings.n_points == 50);
  CHECK(cfg.settings.zeta.evanescent == Complex(10.0, 0.0));
  CHECK(cfg.settings.zeta.leaky == Complex(0.0, 10.0));
  CHECK(cfg.settings.filters.max_attenuation == 15.0);
  CHECK(cfg.settings.filters.residual_tol == 1e-3);

  const SweepConfig again = parse_config(config_to_json(cfg));
  CHECK(config_to_json(again) == config_to_json(cfg));

  // custom material + system selection
  const auto doc = nlohmann::json::parse(R"({
    "materials": [{"name": "steel", "rho": 7.932, "c_l": 5.96, "c_t": 3.26}],
    "system": {"side_a": "steel", "half_thickness_mm": 1.0},
    "zeta": {"leaky": [2.0, 8.0]}
  })");
  const SweepConfig custom = parse_config(doc);
  const TriLayerSystem sys = build_system(custom);
  CHECK(sys.side_a.name == "steel");
  CHECK(sys.side_b.name == "aluminium");
  CHECK(sys.half_thickness_d == 1.0);
  CHECK(custom.settings.zeta.leaky == Complex(2.0, 8.0));
}

TEST_CASE("config validation failures throw ConfigError") {
  auto bad = [](const char* text) {
    CHECK_THROWS_AS(parse_config(nlohmann::json::parse(text)), ConfigError);
  };
  bad(R"({"frequency": {"steps": 0}})");
  bad(R"({"frequency": {"max_mhz": -1}})");
  bad(R"({"frequency": {"min_mhz": 9, "max_mhz": 5}})");
  bad(R"({"n_points": 4})");
  bad(R"({"jobs": 0})");
  bad(R"({"solver": {"method": "magic"}})");
  bad(R"({"zeta": {"leaky": "ten"}})");
  bad(R"({"materials": [{"name": "x"}]})");
  CHECK_THROWS_AS(find_material(parse_config(nlohmann::json::object()),
                                "unobtainium"),
                  LookupError);
}

TEST_CASE("omega grid covers (0, f_max] with the requested step count") {
  SweepConfig cfg = parse_config(nlohmann::json::parse(
      R"({"frequency": {"max_mhz": 3.0, "steps": 6}})"));
  const auto grid = omega_grid(cfg);
  REQUIRE(grid.size() == 6);
  CHECK(grid.front() > 0.0);
  CHECK(grid.back() == doctest::Approx(2.0 * 3.14159265358979 * 3.0));
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("dataset JSON round trip") {
  const SweepConfig cfg =
      parse_config(nlohmann::json::parse(kTinyConfig));
  const SweepResult result =
      sweep(build_system(cfg), omega_grid(cfg), cfg.settings);
  const DispersionDataset ds = make_dataset(result, cfg);
  REQUIRE(!ds.rows.empty());

  const fs::path dir = temp_dir("dataset");
  write_json(ds, (dir / "modes.json").string());
  const DispersionDataset back = load_dataset((dir / "modes.json").string());
  REQUIRE(back.rows.size() == ds.rows.size());
  CHECK(back.config_hash == ds.config_hash);
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    CHECK(back.rows[i].re_kx == ds.rows[i].re_kx);
    CHECK(back.rows[i].im_kx == ds.rows[i].im_kx);
    CHECK(back.rows[i].case_id == ds.rows[i].case_id);
  }
  // the stored config reproduces the sweep setup
  const SweepConfig cfg2 =
      parse_config(nlohmann::json::parse(back.config_text));
  CHECK(config_to_json(cfg2) == config_to_json(cfg));
}

TEST_CASE("CLI sweep is deterministic: byte-identical CSV on rerun") {
  const fs::path dir = temp_dir("determinism");
  std::ofstream(dir / "config.json") << kTinyConfig;
  const std::string cfg_arg = " --config " + (dir / "config.json").string();

  REQUIRE(run_cli("sweep" + cfg_arg + " --out " + (dir / "run1").string()) ==
          kOk);
  REQUIRE(run_cli("sweep" + cfg_arg + " --out " + (dir / "run2").string() +
                  " --jobs 2") == kOk);
  const std::string csv1 = slurp(dir / "run1" / "dispersion.csv");
  const std::string csv2 = slurp(dir / "run2" / "dispersion.csv");
  CHECK(!csv1.empty());
  CHECK(csv1 == csv2);

  // golden header and one golden row frozen from the oracle-validated run
  std::istringstream lines(csv1);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header ==
        "frequency_MHz,omega_rad_per_us,re_kx_rad_per_mm,im_kx_np_per_mm,"
        "phase_velocity_km_per_s,case_id,interface_residual,backward_error");
  CHECK(first.substr(0, 2) == "1,");
  CHECK(first.find("case0:evanescent") != std::string::npos);

  // plot scripts are emitted next to the data
  CHECK(fs::exists(dir / "run1" / "plot_dispersion.py"));
  CHECK(fs::exists(dir / "run1" / "plot_attenuation.py"));
  CHECK(fs::exists(dir / "run1" / "modes.json"));
}

TEST_CASE("CLI exit codes") {
  const fs::path dir = temp_dir("exit_codes");
  std::ofstream(dir / "config.json") << kTinyConfig;
  std::ofstream(dir / "bad.json") << "{ not json";
  std::ofstream(dir / "unknown_material.json")
      << R"({"system": {"guide": "unobtainium"}})";

  CHECK(run_cli("sweep --config " + (dir / "bad.json").string() + " --out " +
                (dir / "out").string()) == kConfigError);
  CHECK(run_cli("sweep --config " + (dir / "unknown_material.json").string() +
                " --out " + (dir / "out").string()) == kLookupError);
  CHECK(run_cli("validate --data " + (dir / "nonexistent").string()) ==
        kError);
  CHECK(run_cli("materials list") == kOk);

  // a real tiny run, then modeshape + validate on it
  REQUIRE(run_cli("sweep --config " + (dir / "config.json").string() +
                  " --out " + (dir / "out").string()) == kOk);
  CHECK(run_cli("validate --data " + (dir / "out").string()) == kOk);
  CHECK(run_cli("modeshape --data " + (dir / "out").string() +
                " --freq 1.03") == kOk);
  CHECK(fs::exists(dir / "out" / "modeshape.csv"));
  CHECK(fs::exists(dir / "out" / "plot_modeshape.py"));
  CHECK(run_cli("modeshape --data " + (dir / "out").string() +
                " --freq 2.5") == kNotFound);
}

}  // TEST_SUITE
