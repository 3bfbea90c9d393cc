#include "llw/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace llw {

namespace {
constexpr Complex kI{0.0, 1.0};
}

std::vector<RadiationCase> enumerate_cases(const TriLayerSystem& sys,
                                           const ZetaDefaults& zeta) {
  std::vector<double> speeds = {sys.side_a.c_t, sys.side_b.c_t, sys.side_a.c_l,
                                sys.side_b.c_l};
  std::sort(speeds.begin(), speeds.end());
  std::vector<double> breaks;
  for (double c : speeds) {
    if (breaks.empty() || c > breaks.back() * (1.0 + 1e-12)) {
      breaks.push_back(c);
    }
  }

  std::vector<RadiationCase> cases;
  double lo = 0.0;
  for (std::size_t k = 0; k <= breaks.size(); ++k) {
    const double hi = (k < breaks.size())
                          ? breaks[k]
                          : std::numeric_limits<double>::infinity();
    RadiationCase cse;
    cse.index = static_cast<int>(k);
    cse.c_min = lo;
    cse.c_max = hi;
    // A wave type radiates iff the whole interval lies above its bulk speed.
    auto kind = [&](double c_bulk) {
      return lo >= c_bulk * (1.0 - 1e-12) ? WaveKind::leaky
                                          : WaveKind::evanescent;
    };
    cse.side_a_shear = kind(sys.side_a.c_t);
    cse.side_a_long = kind(sys.side_a.c_l);
    cse.side_b_shear = kind(sys.side_b.c_t);
    cse.side_b_long = kind(sys.side_b.c_l);
    auto pick = [&](WaveKind w) {
      return w == WaveKind::leaky ? zeta.leaky : zeta.evanescent;
    };
    cse.zeta_phi_a = pick(cse.side_a_long);
    cse.zeta_psi_a = pick(cse.side_a_shear);
    cse.zeta_phi_b = pick(cse.side_b_long);
    cse.zeta_psi_b = pick(cse.side_b_shear);

    int n_leaky = (cse.side_a_shear == WaveKind::leaky) +
                  (cse.side_a_long == WaveKind::leaky) +
                  (cse.side_b_shear == WaveKind::leaky) +
                  (cse.side_b_long == WaveKind::leaky);
    const char* label = n_leaky == 0             ? "evanescent"
                        : n_leaky == 4           ? "fully_leaky"
                        : (cse.side_a_long == WaveKind::evanescent &&
                           cse.side_b_long == WaveKind::evanescent)
                                                 ? "shear_leaky"
                                                 : "mixed_leaky";
    cse.id = "case" + std::to_string(k) + ":" + label;
    cases.push_back(cse);
    lo = hi;
  }
  return cases;
}

CaseGrids make_case_grids(const TriLayerSystem& sys, const RadiationCase& cse,
                          const ReferenceGrid& ref) {
  const double d = sys.half_thickness_d;
  return CaseGrids{
      map_guide(ref, d),
      map_half_space(ref, Side::side_a, d, cse.zeta_phi_a),
      map_half_space(ref, Side::side_a, d, cse.zeta_psi_a),
      map_half_space(ref, Side::side_b, d, cse.zeta_phi_b),
      map_half_space(ref, Side::side_b, d, cse.zeta_psi_b),
  };
}

PEPMatrices assemble_pep(const TriLayerSystem& sys, double omega,
                         const RadiationCase& cse, const CaseGrids& grids) {
  (void)cse;
  if (!(omega > 0.0)) {
    throw AssemblyError("omega must be positive");
  }
  const int n = static_cast<int>(grids.guide.y.size());
  if (n < 8) {
    throw AssemblyError("at least 8 collocation points are required");
  }
  for (const MappedGrid* g :
       {&grids.phi_a, &grids.psi_a, &grids.phi_b, &grids.psi_b}) {
    if (static_cast<int>(g->y.size()) != n) {
      throw AssemblyError("inconsistent grid sizes");
    }
  }

  const BlockLayout B{n};
  const int m = 6 * n;
  PEPMatrices pep;
  pep.n = n;
  pep.l0.setZero(m, m);
  pep.l1.setZero(m, m);
  pep.l2.setZero(m, m);

  const Material& mg = sys.guide;
  const double w2 = omega * omega;

  // Interior rows: equations of motion per field block.
  auto fill_potential_block = [&](int off, const Material& mh,
                                  const MappedGrid& grid, double stiff) {
    // rho_j w^2 I + stiff * D2 into L0, -stiff * I into L2
    pep.l0.block(off, off, n, n) = stiff * grid.d2;
    for (int i = 0; i < n; ++i) {
      pep.l0(off + i, off + i) += mh.rho * w2;
      pep.l2(off + i, off + i) = -stiff;
    }
  };
  fill_potential_block(B.phi1(), sys.side_a, grids.phi_a,
                       sys.side_a.lambda + 2.0 * sys.side_a.mu);
  fill_potential_block(B.psi1(), sys.side_a, grids.psi_a, sys.side_a.mu);
  fill_potential_block(B.phi2(), sys.side_b, grids.phi_b,
                       sys.side_b.lambda + 2.0 * sys.side_b.mu);
  fill_potential_block(B.psi2(), sys.side_b, grids.psi_b, sys.side_b.mu);

  // Guide displacement rows.
  pep.l0.block(B.ux(), B.ux(), n, n) = mg.mu * grids.guide.d2;
  pep.l0.block(B.uy(), B.uy(), n, n) =
      (mg.lambda + 2.0 * mg.mu) * grids.guide.d2;
  pep.l1.block(B.ux(), B.uy(), n, n) =
      (mg.lambda + mg.mu) * kI * grids.guide.d1;
  pep.l1.block(B.uy(), B.ux(), n, n) =
      (mg.lambda + mg.mu) * kI * grids.guide.d1;
  for (int i = 0; i < n; ++i) {
    pep.l0(B.ux() + i, B.ux() + i) += mg.rho * w2;
    pep.l0(B.uy() + i, B.uy() + i) += mg.rho * w2;
    pep.l2(B.ux() + i, B.ux() + i) = -(mg.lambda + 2.0 * mg.mu);
    pep.l2(B.uy() + i, B.uy() + i) = -mg.mu;
  }

  // Interface-condition row replacement. Per interface: normal stress into
  // the phi block, shear stress into the psi block, displacement continuity
  // into the u_x / u_y rows at that interface.
  auto clear_row = [&](int r) {
    pep.l0.row(r).setZero();
    pep.l1.row(r).setZero();
    pep.l2.row(r).setZero();
  };

  struct SideCtx {
    const Material* mat;
    const MappedGrid* phi;
    const MappedGrid* psi;
    int phi_off, psi_off;
    int hs_idx;     // interface index in the half-space grids
    int guide_idx;  // interface index in the guide grid
    const char* tag;
  };
  const SideCtx sides[2] = {
      {&sys.side_a, &grids.phi_a, &grids.psi_a, B.phi1(), B.psi1(),
       grids.phi_a.interface_index, 0, "-d"},
      {&sys.side_b, &grids.phi_b, &grids.psi_b, B.phi2(), B.psi2(),
       grids.phi_b.interface_index, n - 1, "+d"},
  };

  for (const SideCtx& sc : sides) {
    const Material& mh = *sc.mat;
    const int gi = sc.guide_idx;
    const int hi = sc.hs_idx;

    // Normal stress continuity replaces the phi-block interface row.
    {
      const int r = sc.phi_off + hi;
      clear_row(r);
      pep.l0.row(r).segment(B.uy(), n) =
          (mg.lambda + 2.0 * mg.mu) * grids.guide.d1.row(gi);
      pep.l0.row(r).segment(sc.phi_off, n) -=
          (mh.lambda + 2.0 * mh.mu) * sc.phi->d2.row(hi);
      pep.l1(r, B.ux() + gi) = mg.lambda * kI;
      pep.l1.row(r).segment(sc.psi_off, n) =
          -2.0 * mh.mu * kI * sc.psi->d1.row(hi);
      pep.l2(r, sc.phi_off + hi) = mh.lambda;
      pep.replaced_rows.emplace_back(r, std::string("normal_stress@") +
                                            sc.tag);
    }
    // Shear stress continuity replaces the psi-block interface row.
    {
      const int r = sc.psi_off + hi;
      clear_row(r);
      pep.l0.row(r).segment(B.ux(), n) = mg.mu * grids.guide.d1.row(gi);
      pep.l0.row(r).segment(sc.psi_off, n) += mh.mu * sc.psi->d2.row(hi);
      pep.l1(r, B.uy() + gi) = mg.mu * kI;
      pep.l1.row(r).segment(sc.phi_off, n) =
          -2.0 * mh.mu * kI * sc.phi->d1.row(hi);
      pep.l2(r, sc.psi_off + hi) = mh.mu;
      pep.replaced_rows.emplace_back(r, std::string("shear_stress@") + sc.tag);
    }
    // Displacement continuity replaces the guide rows at the interface.
    {
      const int r = B.ux() + gi;
      clear_row(r);
      pep.l0(r, B.ux() + gi) = 1.0;
      pep.l0.row(r).segment(sc.psi_off, n) += sc.psi->d1.row(hi);
      pep.l1(r, sc.phi_off + hi) = -kI;
      pep.replaced_rows.emplace_back(r, std::string("u_x@") + sc.tag);
    }
    {
      const int r = B.uy() + gi;
      clear_row(r);
      pep.l0(r, B.uy() + gi) = 1.0;
      pep.l0.row(r).segment(sc.phi_off, n) -= sc.phi->d1.row(hi);
      pep.l1(r, sc.psi_off + hi) = -kI;
      pep.replaced_rows.emplace_back(r, std::string("u_y@") + sc.tag);
    }
  }

  return pep;
}

void equilibrate_rows(PEPMatrices& pep) {
  const int m = 6 * pep.n;
  for (int i = 0; i < m; ++i) {
    const double scale =
        std::max({pep.l0.row(i).cwiseAbs().maxCoeff(),
                  pep.l1.row(i).cwiseAbs().maxCoeff(),
                  pep.l2.row(i).cwiseAbs().maxCoeff()});
    if (scale > 0.0) {
      pep.l0.row(i) /= scale;
      pep.l1.row(i) /= scale;
      pep.l2.row(i) /= scale;
    }
  }
}

}  // namespace llw
