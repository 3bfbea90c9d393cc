#include "llw/dataset.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <nlohmann/json.hpp>
#include <sstream>

namespace llw {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

DispersionDataset make_dataset(const SweepResult& result,
                               const SweepConfig& cfg) {
  DispersionDataset ds;
  ds.config_text = config_to_json(cfg).dump(2);
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016zx",
                std::hash<std::string>{}(ds.config_text));
  ds.config_hash = hash;
  ds.timestamp = iso_timestamp();
  ds.failures = result.failures;
  int id = 0;
  for (const ModeSolution& m : result.modes) {
    DatasetRow r;
    r.id = id++;
    r.frequency = m.frequency;
    r.omega = m.omega;
    r.re_kx = m.k_x.real();
    r.im_kx = m.k_x.imag();
    r.phase_velocity = m.phase_velocity;
    r.case_index = m.case_index;
    r.case_id = m.case_id;
    r.interface_residual = m.interface_residual;
    r.backward_error = m.backward_error;
    r.branch_point = m.branch_point;
    ds.rows.push_back(std::move(r));
  }
  return ds;
}

void write_csv(const DispersionDataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << "frequency_MHz,omega_rad_per_us,re_kx_rad_per_mm,im_kx_np_per_mm,"
         "phase_velocity_km_per_s,case_id,interface_residual,backward_error\n";
  for (const DatasetRow& r : ds.rows) {
    out << fmt(r.frequency) << ',' << fmt(r.omega) << ',' << fmt(r.re_kx)
        << ',' << fmt(r.im_kx) << ',' << fmt(r.phase_velocity) << ','
        << r.case_id << ',' << fmt(r.interface_residual) << ','
        << fmt(r.backward_error) << '\n';
  }
}

void write_json(const DispersionDataset& ds, const std::string& path) {
  json doc;
  doc["config"] = json::parse(ds.config_text);
  doc["config_hash"] = ds.config_hash;
  doc["timestamp"] = ds.timestamp;
  json rows = json::array();
  for (const DatasetRow& r : ds.rows) {
    rows.push_back({{"id", r.id},
                    {"frequency_mhz", r.frequency},
                    {"omega_rad_per_us", r.omega},
                    {"re_kx", r.re_kx},
                    {"im_kx", r.im_kx},
                    {"phase_velocity", r.phase_velocity},
                    {"case_index", r.case_index},
                    {"case_id", r.case_id},
                    {"interface_residual", r.interface_residual},
                    {"backward_error", r.backward_error},
                    {"branch_point", r.branch_point}});
  }
  doc["modes"] = rows;
  json fails = json::array();
  for (const FailedPoint& f : ds.failures) {
    fails.push_back({{"omega", f.omega},
                     {"case_id", f.case_id},
                     {"message", f.message}});
  }
  doc["failed_points"] = fails;
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

DispersionDataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(std::string("dataset is not valid JSON: ") + e.what());
  }
  DispersionDataset ds;
  try {
    ds.config_text = doc.at("config").dump(2);
    ds.config_hash = doc.value("config_hash", "");
    ds.timestamp = doc.value("timestamp", "");
    for (const auto& r : doc.at("modes")) {
      DatasetRow row;
      row.id = r.at("id").get<int>();
      row.frequency = r.at("frequency_mhz").get<double>();
      row.omega = r.at("omega_rad_per_us").get<double>();
      row.re_kx = r.at("re_kx").get<double>();
      row.im_kx = r.at("im_kx").get<double>();
      row.phase_velocity = r.at("phase_velocity").get<double>();
      row.case_index = r.at("case_index").get<int>();
      row.case_id = r.at("case_id").get<std::string>();
      row.interface_residual = r.at("interface_residual").get<double>();
      row.backward_error = r.at("backward_error").get<double>();
      row.branch_point = r.value("branch_point", false);
      ds.rows.push_back(std::move(row));
    }
    for (const auto& f : doc.value("failed_points", json::array())) {
      ds.failures.push_back({f.at("omega").get<double>(),
                             f.at("case_id").get<std::string>(),
                             f.at("message").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw Error(std::string("dataset is missing fields: ") + e.what());
  }
  return ds;
}

void write_plot_scripts(const std::string& dir) {
  {
    std::ofstream out(dir + "/plot_dispersion.py");
    out << R"(#!/usr/bin/env python3
"""Phase velocity vs frequency from dispersion.csv."""
import csv, os
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
f, c, case = [], [], []
with open(os.path.join(here, "dispersion.csv")) as fh:
    for row in csv.DictReader(fh):
        f.append(float(row["frequency_MHz"]))
        c.append(float(row["phase_velocity_km_per_s"]))
        case.append(row["case_id"])

fig, ax = plt.subplots(figsize=(7, 5))
for label in sorted(set(case)):
    xs = [x for x, l in zip(f, case) if l == label]
    ys = [y for y, l in zip(c, case) if l == label]
    ax.plot(xs, ys, "o", ms=2.5, label=label)
ax.set_xlabel("frequency [MHz]")
ax.set_ylabel("phase velocity [km/s]")
ax.set_ylim(0, 12)
ax.legend(markerscale=3)
fig.tight_layout()
fig.savefig(os.path.join(here, "dispersion.png"), dpi=200)
print("wrote dispersion.png")
)";
  }
  {
    std::ofstream out(dir + "/plot_attenuation.py");
    out << R"(#!/usr/bin/env python3
"""Attenuation vs frequency from dispersion.csv (display capped at 10 Np/mm)."""
import csv, os
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
f, a, case = [], [], []
with open(os.path.join(here, "dispersion.csv")) as fh:
    for row in csv.DictReader(fh):
        att = float(row["im_kx_np_per_mm"])
        if att > 10.0:
            continue  # high-attenuation solutions are not displayed
        f.append(float(row["frequency_MHz"]))
        a.append(att)
        case.append(row["case_id"])

fig, ax = plt.subplots(figsize=(7, 5))
for label in sorted(set(case)):
    xs = [x for x, l in zip(f, case) if l == label]
    ys = [y for y, l in zip(a, case) if l == label]
    ax.plot(xs, ys, "o", ms=2.5, label=label)
ax.set_xlabel("frequency [MHz]")
ax.set_ylabel("attenuation [Np/mm]")
ax.set_ylim(0, 10)
ax.legend(markerscale=3)
fig.tight_layout()
fig.savefig(os.path.join(here, "attenuation.png"), dpi=200)
print("wrote attenuation.png")
)";
  }
}

void write_modeshape_plot_script(const std::string& dir) {
  std::ofstream out(dir + "/plot_modeshape.py");
  out << R"(#!/usr/bin/env python3
"""Displacement profiles from modeshape.csv."""
import csv, os
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
rows = list(csv.DictReader(open(os.path.join(here, "modeshape.csv"))))
y = [float(r["y_mm"]) for r in rows]
ux = [abs(complex(float(r["re_ux"]), float(r["im_ux"]))) for r in rows]
uy = [abs(complex(float(r["re_uy"]), float(r["im_uy"]))) for r in rows]

fig, ax = plt.subplots(figsize=(5, 6))
ax.plot(ux, y, label="|u_x|")
ax.plot(uy, y, label="|u_y|")
ax.set_xlabel("|u|")
ax.set_ylabel("y [mm]")
ax.legend()
fig.tight_layout()
fig.savefig(os.path.join(here, "modeshape.png"), dpi=200)
print("wrote modeshape.png")
)";
}

}  // namespace llw
