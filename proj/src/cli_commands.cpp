#include "llw/cli_commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numbers>

#include "llw/dataset.hpp"
#include "llw/oracle.hpp"

namespace llw {

namespace {

namespace fs = std::filesystem;

SweepConfig config_from_dataset(const DispersionDataset& ds) {
  return parse_config(nlohmann::json::parse(ds.config_text));
}

}  // namespace

int cli_sweep(const std::string& config_path, const std::string& out_dir,
              int jobs_override) {
  SweepConfig cfg;
  try {
    cfg = load_config(config_path);
    if (jobs_override > 0) cfg.settings.jobs = jobs_override;
  } catch (const LookupError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kLookupError;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  }

  try {
    const TriLayerSystem sys = build_system(cfg);
    const SweepResult result = sweep(sys, omega_grid(cfg), cfg.settings);
    const DispersionDataset ds = make_dataset(result, cfg);
    fs::create_directories(out_dir);
    write_csv(ds, out_dir + "/dispersion.csv");
    write_json(ds, out_dir + "/modes.json");
    write_plot_scripts(out_dir);
    std::printf("retained %zu modes over %zu frequencies (%zu failed points)\n",
                ds.rows.size(), omega_grid(cfg).size(), ds.failures.size());
    return ds.failures.empty() ? kOk : kPartialSweep;
  } catch (const LookupError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kLookupError;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kError;
  }
}

int cli_modeshape(const std::string& data_dir, double freq_mhz, int mode_id,
                  const std::string& case_filter, double y_extent_mm) {
  try {
    const DispersionDataset ds = load_dataset(data_dir + "/modes.json");
    const SweepConfig cfg = config_from_dataset(ds);
    const TriLayerSystem sys = build_system(cfg);

    // Frequency tolerance: half a grid step.
    const auto grid = omega_grid(cfg);
    double step_mhz = grid.size() > 1
                          ? (grid[1] - grid[0]) / (2.0 * std::numbers::pi)
                          : 0.0;
    const double tol = std::max(1e-9, 0.51 * step_mhz);

    std::vector<const DatasetRow*> candidates;
    for (const DatasetRow& r : ds.rows) {
      if (std::abs(r.frequency - freq_mhz) > tol) continue;
      if (mode_id >= 0 && r.id != mode_id) continue;
      if (!case_filter.empty() &&
          r.case_id.find(case_filter) == std::string::npos) {
        continue;
      }
      candidates.push_back(&r);
    }
    if (candidates.empty()) {
      std::fprintf(stderr,
                   "error: no mode matches f=%.6g MHz; nearest candidates:\n",
                   freq_mhz);
      std::vector<const DatasetRow*> all;
      for (const DatasetRow& r : ds.rows) all.push_back(&r);
      std::sort(all.begin(), all.end(),
                [&](const DatasetRow* a, const DatasetRow* b) {
                  return std::abs(a->frequency - freq_mhz) <
                         std::abs(b->frequency - freq_mhz);
                });
      for (std::size_t i = 0; i < std::min<std::size_t>(3, all.size()); ++i) {
        std::fprintf(stderr, "  id=%d f=%.6g MHz case=%s att=%.3g Np/mm\n",
                     all[i]->id, all[i]->frequency, all[i]->case_id.c_str(),
                     all[i]->im_kx);
      }
      return kNotFound;
    }
    // Default selector: the least attenuated matching mode.
    std::sort(candidates.begin(), candidates.end(),
              [](const DatasetRow* a, const DatasetRow* b) {
                return a->im_kx < b->im_kx;
              });
    const DatasetRow& row = *candidates.front();

    // Re-solve the (omega, case) point to recover the eigenvector.
    const auto cases = enumerate_cases(sys, cfg.settings.zeta);
    const RadiationCase& cse = cases.at(row.case_index);
    const ReferenceGrid ref = reference_grid(cfg.settings.n_points);
    const CaseGrids grids = make_case_grids(sys, cse, ref);
    PEPMatrices pep = assemble_pep(sys, row.omega, cse, grids);
    if (cfg.settings.equilibrate) equilibrate_rows(pep);
    const auto pairs = solve_pep(pep, cfg.settings.solver);
    const auto modes = filter_modes(pairs, cse, sys, row.omega,
                                    cfg.settings.filters, grids,
                                    cfg.settings.solver.infinite_guard);
    const Complex target(row.re_kx, row.im_kx);
    const ModeSolution* best = nullptr;
    double best_d = 1e300;
    for (const ModeSolution& m : modes) {
      const double dist = std::abs(m.k_x - target);
      if (dist < best_d) {
        best_d = dist;
        best = &m;
      }
    }
    if (best == nullptr || best_d > 1e-3 * std::abs(target)) {
      std::fprintf(stderr, "error: stored mode not reproduced by re-solve\n");
      return kNotFound;
    }

    const double extent =
        y_extent_mm > 0.0 ? y_extent_mm : 5.0 * sys.half_thickness_d;
    const ModeShape shape = mode_shape(*best, sys, cse, grids, extent);

    fs::create_directories(data_dir);
    std::ofstream out(data_dir + "/modeshape.csv");
    out << "y_mm,re_ux,im_ux,re_uy,im_uy,region\n";
    auto dump = [&](const Eigen::VectorXd& y, const Eigen::VectorXcd& ux,
                    const Eigen::VectorXcd& uy, const char* region) {
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        out << y(i) << ',' << ux(i).real() << ',' << ux(i).imag() << ','
            << uy(i).real() << ',' << uy(i).imag() << ',' << region << '\n';
      }
    };
    dump(shape.y_a, shape.ux_a, shape.uy_a, "side_a");
    dump(shape.y_guide, shape.ux_guide, shape.uy_guide, "guide");
    dump(shape.y_b, shape.ux_b, shape.uy_b, "side_b");
    write_modeshape_plot_script(data_dir);
    std::printf("mode id=%d f=%.6g MHz k_x=%.8g%+.3gi case=%s -> %s\n",
                row.id, row.frequency, row.re_kx, row.im_kx,
                row.case_id.c_str(), (data_dir + "/modeshape.csv").c_str());
    return kOk;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kError;
  }
}

int cli_validate(const std::string& data_dir) {
  try {
    const DispersionDataset ds = load_dataset(data_dir + "/modes.json");
    const SweepConfig cfg = config_from_dataset(ds);
    const TriLayerSystem sys = build_system(cfg);
    const auto cases = enumerate_cases(sys, cfg.settings.zeta);

    if (ds.rows.empty()) {
      std::printf("empty dataset: nothing to validate\n");
      return kOk;
    }

    std::printf("%6s %12s %14s %14s %12s %6s\n", "id", "f[MHz]", "|D(scm)|",
                "refined k_x", "rel dev", "ok");
    std::size_t pass = 0, nonconv = 0;
    for (const DatasetRow& r : ds.rows) {
      const RadiationCase& cse = cases.at(r.case_index);
      const auto kinds = oracle::branch_kinds(cse);
      const Complex k(r.re_kx, r.im_kx);
      const double det_scm =
          std::abs(oracle::characteristic_determinant(sys, r.omega, k, kinds));
      const auto ref = oracle::refine_root(sys, r.omega, k, kinds);
      const double dev =
          ref.converged ? std::abs(ref.k_x - k) / std::abs(k) : 1e300;
      const bool ok = ref.converged && dev < 1e-4 && det_scm < 1e-5;
      if (ok) ++pass;
      if (!ref.converged) ++nonconv;
      std::printf("%6d %12.6g %14.4g %14.8g %12.3g %6s\n", r.id, r.frequency,
                  det_scm, ref.k_x.real(), dev, ok ? "yes" : "NO");
    }
    const double frac = static_cast<double>(pass) / ds.rows.size();
    std::printf("summary: %zu/%zu modes validated (%.2f%%), "
                "%zu non-converged refinements\n",
                pass, ds.rows.size(), 100.0 * frac, nonconv);
    const bool healthy = frac >= 0.99;
    std::printf("%s\n", healthy ? "PASS" : "FAIL");
    return healthy ? kOk : kValidationFailed;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kError;
  }
}

int cli_materials_list(const std::string& config_path) {
  try {
    SweepConfig cfg;
    if (!config_path.empty()) {
      cfg = load_config(config_path);
    } else {
      cfg.materials = material_presets();
    }
    std::printf("%-16s %10s %10s %10s %10s %10s\n", "name", "rho[g/cm3]",
                "c_l[km/s]", "c_t[km/s]", "lambda[GPa]", "mu[GPa]");
    for (const Material& m : cfg.materials) {
      std::printf("%-16s %10.4g %10.4g %10.4g %10.5g %10.5g\n",
                  m.name.c_str(), m.rho, m.c_l, m.c_t, m.lambda, m.mu);
    }
    return kOk;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kError;
  }
}

}  // namespace llw
