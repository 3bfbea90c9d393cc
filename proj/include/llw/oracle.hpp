#pragma once

#include <Eigen/Dense>
#include <vector>

#include "llw/assembly.hpp"
#include "llw/materials.hpp"

namespace llw {

/// Square root of k_y^2 on the physical branch: decaying (Im > 0) for
/// evanescent, outgoing/growing (Im < 0, Re > 0 in the limit) for leaky.
Complex select_branch(Complex k_y_sq, WaveKind kind);

namespace oracle {

/// Leaky/evanescent branch choice per half-space partial wave.
struct BranchKinds {
  WaveKind a_long = WaveKind::evanescent;
  WaveKind a_shear = WaveKind::evanescent;
  WaveKind b_long = WaveKind::evanescent;
  WaveKind b_shear = WaveKind::evanescent;
};

BranchKinds branch_kinds(const RadiationCase& cse);

/// 8x8 global matrix enforcing the four continuity conditions at each
/// interface on the partial-wave amplitudes
/// (A1, A2, A3, A4, B1, C1, B2, C2): guide longitudinal/shear pairs, then
/// one longitudinal and one shear amplitude per half-space.
Eigen::Matrix<Complex, 8, 8> characteristic_matrix(const TriLayerSystem& sys,
                                                   double omega, Complex k_x,
                                                   const BranchKinds& kinds);

/// Determinant of the row-normalized characteristic matrix (each row scaled
/// to unit 2-norm), so magnitudes are comparable across k_x.
Complex characteristic_determinant(const TriLayerSystem& sys, double omega,
                                   Complex k_x, const BranchKinds& kinds);

/// Amplitude vector at (or near) a root: the right singular vector of the
/// row-scaled characteristic matrix with smallest singular value.
Eigen::Matrix<Complex, 8, 1> null_amplitudes(const TriLayerSystem& sys,
                                             double omega, Complex k_x,
                                             const BranchKinds& kinds);

struct RefineResult {
  Complex k_x;
  bool converged = false;
  int iterations = 0;
};

/// Newton iteration on the (fixed-scaling) determinant from the given seed;
/// stops at |dk|/|k| < 1e-10 or 50 iterations.
RefineResult refine_root(const TriLayerSystem& sys, double omega,
                         Complex k_x_seed, const BranchKinds& kinds);

enum class LambSymmetry { S, A };

/// Real characteristic function of the traction-free plate (zero at the
/// Rayleigh-Lamb roots); exposed for residual checks.
double rayleigh_lamb_function(const Material& guide, double d, double omega,
                              LambSymmetry sym, double k_x);

/// Real roots k_x of the symmetric/antisymmetric Rayleigh-Lamb equations,
/// found by a bracketed scan with bisection polish.
std::vector<double> rayleigh_lamb_roots(const Material& guide, double d,
                                        double omega, LambSymmetry sym);

}  // namespace oracle
}  // namespace llw
