#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "llw/materials.hpp"
#include "llw/spectral.hpp"

namespace llw {

enum class WaveKind { evanescent, leaky };

/// One phase-velocity interval with a fixed leaky/evanescent classification
/// of each partial wave in each half-space, and the map parameters used to
/// discretise it.
struct RadiationCase {
  int index = 0;
  std::string id;
  WaveKind side_a_long = WaveKind::evanescent;
  WaveKind side_a_shear = WaveKind::evanescent;
  WaveKind side_b_long = WaveKind::evanescent;
  WaveKind side_b_shear = WaveKind::evanescent;
  double c_min = 0.0;  // mm/us
  double c_max = 0.0;  // mm/us, +inf for the top interval
  Complex zeta_phi_a, zeta_psi_a, zeta_phi_b, zeta_psi_b;  // mm
};

struct ZetaDefaults {
  Complex evanescent{10.0, 0.0};
  Complex leaky{0.0, 10.0};
};

/// Partition the phase-velocity axis by the sorted distinct bulk wavespeeds
/// of the two half-spaces; classify each side/wave type per interval and
/// assign zeta values (real for evanescent, imaginary for leaky).
std::vector<RadiationCase> enumerate_cases(const TriLayerSystem& sys,
                                           const ZetaDefaults& zeta = {});

/// The five collocation grids of one radiation case.
struct CaseGrids {
  MappedGrid guide;
  MappedGrid phi_a, psi_a;
  MappedGrid phi_b, psi_b;
};

CaseGrids make_case_grids(const TriLayerSystem& sys, const RadiationCase& cse,
                          const ReferenceGrid& ref);

/// Quadratic eigenvalue problem (k_x^2 L2 + k_x L1 + L0) u = 0 with the
/// eigenvector blocks ordered (phi1, psi1, u_x, u_y, phi2, psi2), each of
/// size N.
struct PEPMatrices {
  int n = 0;  // points per field block; matrices are 6n x 6n
  Eigen::MatrixXcd l0, l1, l2;
  std::vector<std::pair<int, std::string>> replaced_rows;
};

// Block offsets into the 6n eigenvector.
struct BlockLayout {
  int n;
  int phi1() const { return 0; }
  int psi1() const { return n; }
  int ux() const { return 2 * n; }
  int uy() const { return 3 * n; }
  int phi2() const { return 4 * n; }
  int psi2() const { return 5 * n; }
};

PEPMatrices assemble_pep(const TriLayerSystem& sys, double omega,
                         const RadiationCase& cse, const CaseGrids& grids);

/// Diagonal left-scaling of all three matrices by the per-row max magnitude;
/// leaves the eigenvalues unchanged.
void equilibrate_rows(PEPMatrices& pep);

}  // namespace llw
