#include "llw/mode_pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <thread>

namespace llw {

namespace {

constexpr Complex kI{0.0, 1.0};

struct InterfaceWavenumbers {
  Complex kyl1, kyt1, kyl2, kyt2;
  bool branch_point = false;
};

InterfaceWavenumbers half_space_wavenumbers(const TriLayerSystem& sys,
                                            double omega, Complex k_x,
                                            const RadiationCase& cse) {
  InterfaceWavenumbers w;
  auto pick = [&](const Material& m, double c, WaveKind kind) {
    const Complex sq = transverse_wavenumber_sq(omega / c, k_x);
    (void)m;
    return std::make_pair(select_branch(sq, kind), sq);
  };
  const double scale = omega * omega;
  auto [a, asq] = pick(sys.side_a, sys.side_a.c_l, cse.side_a_long);
  auto [b, bsq] = pick(sys.side_a, sys.side_a.c_t, cse.side_a_shear);
  auto [c, csq] = pick(sys.side_b, sys.side_b.c_l, cse.side_b_long);
  auto [e, esq] = pick(sys.side_b, sys.side_b.c_t, cse.side_b_shear);
  w.kyl1 = a;
  w.kyt1 = b;
  w.kyl2 = c;
  w.kyt2 = e;
  for (Complex sq : {asq, bsq, csq, esq}) {
    if (std::abs(sq) < 1e-10 * scale) w.branch_point = true;
  }
  return w;
}

}  // namespace

double interface_residual(const Eigen::VectorXcd& u, Complex k_x, double omega,
                          const TriLayerSystem& sys, const RadiationCase& cse,
                          const CaseGrids& grids) {
  const int n = static_cast<int>(grids.guide.y.size());
  const BlockLayout B{n};
  const Material& mg = sys.guide;
  const double umax = u.cwiseAbs().maxCoeff();
  const InterfaceWavenumbers w =
      half_space_wavenumbers(sys, omega, k_x, cse);

  const double stress_scale = mg.mu * std::max(std::abs(k_x), 1e-30) * umax;
  const double disp_scale = umax;

  double worst = 0.0;
  auto track = [&](Complex r, double scale) {
    worst = std::max(worst, std::abs(r) / scale);
  };

  struct SideCtx {
    const Material* mat;
    Complex kyl, kyt;
    double sign;
    int phi_off, psi_off, hs_idx, guide_idx;
  };
  const SideCtx sides[2] = {
      {&sys.side_a, w.kyl1, w.kyt1, -1.0, B.phi1(), B.psi1(),
       grids.phi_a.interface_index, 0},
      {&sys.side_b, w.kyl2, w.kyt2, +1.0, B.phi2(), B.psi2(),
       grids.phi_b.interface_index, n - 1},
  };

  for (const SideCtx& sc : sides) {
    const Material& mh = *sc.mat;
    const Complex phi = u(sc.phi_off + sc.hs_idx);
    const Complex psi = u(sc.psi_off + sc.hs_idx);
    const Complex ux = u(B.ux() + sc.guide_idx);
    const Complex uy = u(B.uy() + sc.guide_idx);
    const Complex dux =
        grids.guide.d1.row(sc.guide_idx) * u.segment(B.ux(), n);
    const Complex duy =
        grids.guide.d1.row(sc.guide_idx) * u.segment(B.uy(), n);

    // Outgoing-wave relations give the half-space derivatives analytically.
    const Complex dphi = kI * sc.kyl * sc.sign * phi;
    const Complex d2phi = -sc.kyl * sc.kyl * phi;
    const Complex dpsi = kI * sc.kyt * sc.sign * psi;
    const Complex d2psi = -sc.kyt * sc.kyt * psi;

    const Complex r_norm = (mg.lambda + 2.0 * mg.mu) * duy +
                           mg.lambda * kI * k_x * ux +
                           mh.lambda * k_x * k_x * phi -
                           (mh.lambda + 2.0 * mh.mu) * d2phi -
                           2.0 * mh.mu * kI * k_x * dpsi;
    const Complex r_shear =
        mg.mu * (kI * k_x * uy + dux) -
        mh.mu * (2.0 * kI * k_x * dphi - k_x * k_x * psi - d2psi);
    const Complex r_ux = ux - kI * k_x * phi + dpsi;
    const Complex r_uy = uy - dphi - kI * k_x * psi;

    track(r_norm, stress_scale);
    track(r_shear, stress_scale);
    track(r_ux, disp_scale);
    track(r_uy, disp_scale);
  }
  return worst;
}

std::vector<ModeSolution> filter_modes(const std::vector<EigenPair>& raw,
                                       const RadiationCase& cse,
                                       const TriLayerSystem& sys, double omega,
                                       const FilterConfig& cfg,
                                       const CaseGrids& grids,
                                       double infinite_guard) {
  std::vector<ModeSolution> out;
  const double bulk_speeds[6] = {sys.guide.c_l,  sys.guide.c_t,
                                 sys.side_a.c_l, sys.side_a.c_t,
                                 sys.side_b.c_l, sys.side_b.c_t};
  for (const EigenPair& p : raw) {
    const Complex k = p.k_x;
    if (!(k.real() > 0.0)) continue;
    if (!std::isfinite(std::abs(k)) || std::abs(k) > infinite_guard) continue;

    double att = k.imag();
    if (std::abs(att) < cfg.neg_att_clamp) att = 0.0;
    if (att < 0.0) continue;
    if (att >= cfg.max_attenuation) continue;

    bool is_bulk = false;
    for (double c : bulk_speeds) {
      const double kb = omega / c;
      if (std::abs(k - kb) < cfg.bulk_tol * kb) is_bulk = true;
    }
    if (is_bulk) continue;

    const double c_ph = omega / k.real();
    if (c_ph < cse.c_min * (1.0 - cfg.edge_tol)) continue;
    if (std::isfinite(cse.c_max) && c_ph > cse.c_max * (1.0 + cfg.edge_tol)) {
      continue;
    }

    if (p.backward_error > cfg.backward_tol) continue;

    const double resid = interface_residual(p.vector, k, omega, sys, cse,
                                            grids);
    if (resid > cfg.residual_tol) continue;

    ModeSolution mode;
    mode.omega = omega;
    mode.frequency = omega / (2.0 * std::numbers::pi);
    mode.k_x = Complex(k.real(), att);
    mode.phase_velocity = c_ph;
    mode.attenuation = att;
    mode.case_index = cse.index;
    mode.case_id = cse.id;
    mode.interface_residual = resid;
    mode.backward_error = p.backward_error;
    mode.vector = p.vector;
    mode.branch_point =
        half_space_wavenumbers(sys, omega, k, cse).branch_point;
    out.push_back(std::move(mode));
  }
  return out;
}

std::vector<ModeSolution> dedup_modes(std::vector<ModeSolution> modes,
                                      double dedup_tol) {
  std::sort(modes.begin(), modes.end(),
            [](const ModeSolution& a, const ModeSolution& b) {
              if (a.omega != b.omega) return a.omega < b.omega;
              if (a.case_index != b.case_index) {
                return a.case_index < b.case_index;
              }
              return a.k_x.real() < b.k_x.real();
            });
  std::vector<ModeSolution> out;
  for (ModeSolution& m : modes) {
    bool duplicate = false;
    for (ModeSolution& kept : out) {
      if (kept.omega != m.omega) continue;
      if (std::abs(kept.k_x - m.k_x) <
          dedup_tol * std::max(std::abs(kept.k_x), std::abs(m.k_x))) {
        duplicate = true;
        if (m.interface_residual < kept.interface_residual) kept = m;
        break;
      }
    }
    if (!duplicate) out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(),
            [](const ModeSolution& a, const ModeSolution& b) {
              if (a.omega != b.omega) return a.omega < b.omega;
              if (a.case_index != b.case_index) {
                return a.case_index < b.case_index;
              }
              return a.k_x.real() < b.k_x.real();
            });
  return out;
}

SweepResult sweep(const TriLayerSystem& sys,
                  const std::vector<double>& omega_grid,
                  const SweepSettings& settings) {
  SweepResult result;
  result.cases = enumerate_cases(sys, settings.zeta);
  if (omega_grid.empty()) return result;
  for (std::size_t i = 1; i < omega_grid.size(); ++i) {
    if (!(omega_grid[i] > omega_grid[i - 1])) {
      throw Error("omega grid must be strictly increasing");
    }
  }
  if (!(omega_grid.front() > 0.0)) {
    throw Error("omega grid must be positive");
  }

  const ReferenceGrid ref = reference_grid(settings.n_points);
  std::vector<CaseGrids> grids;
  grids.reserve(result.cases.size());
  for (const RadiationCase& cse : result.cases) {
    grids.push_back(make_case_grids(sys, cse, ref));
  }

  struct Task {
    std::size_t omega_idx;
    std::size_t case_idx;
  };
  std::vector<Task> tasks;
  for (std::size_t wi = 0; wi < omega_grid.size(); ++wi) {
    for (std::size_t ci = 0; ci < result.cases.size(); ++ci) {
      tasks.push_back({wi, ci});
    }
  }

  std::mutex merge_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const double omega = omega_grid[tasks[t].omega_idx];
      const RadiationCase& cse = result.cases[tasks[t].case_idx];
      const CaseGrids& cg = grids[tasks[t].case_idx];
      try {
        PEPMatrices pep = assemble_pep(sys, omega, cse, cg);
        if (settings.equilibrate) equilibrate_rows(pep);
        const auto pairs = solve_pep(pep, settings.solver);
        auto modes = filter_modes(pairs, cse, sys, omega, settings.filters,
                                  cg, settings.solver.infinite_guard);
        std::lock_guard<std::mutex> lock(merge_mutex);
        for (auto& m : modes) result.modes.push_back(std::move(m));
      } catch (const Error& e) {
        std::lock_guard<std::mutex> lock(merge_mutex);
        result.failures.push_back({omega, cse.id, e.what()});
      }
    }
  };

  const int jobs = std::max(1, settings.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  result.modes = dedup_modes(std::move(result.modes),
                             settings.filters.dedup_tol);
  std::sort(result.failures.begin(), result.failures.end(),
            [](const FailedPoint& a, const FailedPoint& b) {
              if (a.omega != b.omega) return a.omega < b.omega;
              return a.case_id < b.case_id;
            });
  return result;
}

ModeShape mode_shape(const ModeSolution& mode, const TriLayerSystem& sys,
                     const RadiationCase& cse, const CaseGrids& grids,
                     double y_extent, int samples_per_region) {
  if (!(y_extent > 0.0)) {
    throw Error("mode_shape requires positive y_extent");
  }
  const int n = static_cast<int>(grids.guide.y.size());
  const BlockLayout B{n};
  const double d = sys.half_thickness_d;
  const Complex k = mode.k_x;
  const InterfaceWavenumbers w =
      half_space_wavenumbers(sys, mode.omega, k, cse);

  ModeShape shape;
  shape.a_long = cse.side_a_long;
  shape.a_shear = cse.side_a_shear;
  shape.b_long = cse.side_b_long;
  shape.b_shear = cse.side_b_shear;
  shape.branch_point = w.branch_point;

  const int ns = samples_per_region;
  shape.y_guide.resize(ns);
  shape.ux_guide.resize(ns);
  shape.uy_guide.resize(ns);
  const Eigen::VectorXd y_nodes = grids.guide.y.real();
  const Eigen::VectorXcd ux_nodes = mode.vector.segment(B.ux(), n);
  const Eigen::VectorXcd uy_nodes = mode.vector.segment(B.uy(), n);
  for (int i = 0; i < ns; ++i) {
    const double y = -d + 2.0 * d * i / (ns - 1);
    shape.y_guide(i) = y;
    shape.ux_guide(i) = barycentric_interpolate(y_nodes, ux_nodes, y);
    shape.uy_guide(i) = barycentric_interpolate(y_nodes, uy_nodes, y);
  }

  // Half-space fields from the interface potential values; for leaky
  // branches these grow with distance from the interface.
  const Complex phi1 = mode.vector(B.phi1() + grids.phi_a.interface_index);
  const Complex psi1 = mode.vector(B.psi1() + grids.psi_a.interface_index);
  const Complex phi2 = mode.vector(B.phi2() + grids.phi_b.interface_index);
  const Complex psi2 = mode.vector(B.psi2() + grids.psi_b.interface_index);

  shape.y_a.resize(ns);
  shape.ux_a.resize(ns);
  shape.uy_a.resize(ns);
  for (int i = 0; i < ns; ++i) {
    const double y = -d - y_extent + y_extent * i / (ns - 1);
    const double eta = -(y + d);
    const Complex p = phi1 * std::exp(kI * w.kyl1 * eta);
    const Complex s = psi1 * std::exp(kI * w.kyt1 * eta);
    shape.y_a(i) = y;
    // u_x = i k phi - dPsi/dy, u_y = dphi/dy + i k Psi, with d/dy = -d/deta.
    shape.ux_a(i) = kI * k * p + kI * w.kyt1 * s;
    shape.uy_a(i) = -kI * w.kyl1 * p + kI * k * s;
  }

  shape.y_b.resize(ns);
  shape.ux_b.resize(ns);
  shape.uy_b.resize(ns);
  for (int i = 0; i < ns; ++i) {
    const double y = d + y_extent * i / (ns - 1);
    const double eta = y - d;
    const Complex p = phi2 * std::exp(kI * w.kyl2 * eta);
    const Complex s = psi2 * std::exp(kI * w.kyt2 * eta);
    shape.y_b(i) = y;
    shape.ux_b(i) = kI * k * p - kI * w.kyt2 * s;
    shape.uy_b(i) = kI * w.kyl2 * p + kI * k * s;
  }
  return shape;
}

}  // namespace llw
