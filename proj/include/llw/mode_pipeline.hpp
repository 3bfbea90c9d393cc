#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "llw/assembly.hpp"
#include "llw/oracle.hpp"
#include "llw/pep_solver.hpp"

namespace llw {

struct FilterConfig {
  double max_attenuation = 15.0;     // Np/mm
  double residual_tol = 1e-3;        // interface-condition compliance
  double backward_tol = 1e-6;        // eigenpair backward error
  double bulk_tol = 1e-4;            // relative distance to bulk wavenumbers
  double edge_tol = 1e-6;            // relative slack at interval edges
  double neg_att_clamp = 1e-9;       // |Im k_x| below this is zero
  double dedup_tol = 1e-6;           // relative k_x distance for duplicates
};

struct ModeSolution {
  double omega = 0.0;          // rad/us
  double frequency = 0.0;      // MHz
  Complex k_x;                 // rad/mm
  double phase_velocity = 0.0; // mm/us
  double attenuation = 0.0;    // Np/mm
  int case_index = 0;
  std::string case_id;
  double interface_residual = 0.0;
  double backward_error = 0.0;
  Eigen::VectorXcd vector;
  bool branch_point = false;
};

/// Physical interface-condition residual of a candidate eigenvector at
/// (omega, k_x): the half-space derivatives are evaluated analytically from
/// the interface potential values (outgoing-wave relations), so the check is
/// independent of the row replacement that built the eigenproblem.
double interface_residual(const Eigen::VectorXcd& u, Complex k_x, double omega,
                          const TriLayerSystem& sys, const RadiationCase& cse,
                          const CaseGrids& grids);

std::vector<ModeSolution> filter_modes(const std::vector<EigenPair>& raw,
                                       const RadiationCase& cse,
                                       const TriLayerSystem& sys, double omega,
                                       const FilterConfig& cfg,
                                       const CaseGrids& grids,
                                       double infinite_guard = 1e8);

/// Remove duplicate modes at the same frequency across cases, keeping the
/// smaller interface residual. Input need not be sorted; output is sorted by
/// (omega, case index, Re k_x). Idempotent.
std::vector<ModeSolution> dedup_modes(std::vector<ModeSolution> modes,
                                      double dedup_tol);

struct FailedPoint {
  double omega = 0.0;
  std::string case_id;
  std::string message;
};

struct SweepSettings {
  int n_points = 50;
  ZetaDefaults zeta;
  FilterConfig filters;
  SolveOptions solver;
  int jobs = 1;
  bool equilibrate = true;
};

struct SweepResult {
  std::vector<ModeSolution> modes;
  std::vector<FailedPoint> failures;
  std::vector<RadiationCase> cases;
};

/// Assemble-solve-filter over every (omega, radiation case) pair, then merge
/// with cross-case deduplication. Solver failures are recorded per point
/// without aborting the sweep. Output order is deterministic.
SweepResult sweep(const TriLayerSystem& sys,
                  const std::vector<double>& omega_grid,
                  const SweepSettings& settings);

struct ModeShape {
  Eigen::VectorXd y_guide;                 // mm, in [-d, d]
  Eigen::VectorXcd ux_guide, uy_guide;
  Eigen::VectorXd y_a, y_b;                // real coordinates into half-spaces
  Eigen::VectorXcd ux_a, uy_a, ux_b, uy_b; // physical (growing) fields
  WaveKind a_long, a_shear, b_long, b_shear;
  bool branch_point = false;
};

/// Reconstruct physical displacement profiles: barycentric interpolation in
/// the guide, analytic exponentials from the interface potential values in
/// the half-spaces (growing for leaky branches).
ModeShape mode_shape(const ModeSolution& mode, const TriLayerSystem& sys,
                     const RadiationCase& cse, const CaseGrids& grids,
                     double y_extent, int samples_per_region = 201);

}  // namespace llw
