#pragma once

#include <Eigen/Dense>
#include <vector>

#include "llw/assembly.hpp"

namespace llw {

struct EigenPair {
  Complex k_x;              // rad/mm
  Eigen::VectorXcd vector;  // 6N, unit max-magnitude entry
  double backward_error;    // relative, against the quadratic
};

enum class SolveMethod {
  automatic,   // reciprocal when L0 is well conditioned, pencil otherwise
  pencil,      // first companion pencil, generalized eigensolve (zggev3)
  reciprocal,  // companion of the reciprocal problem via L0^{-1} (zgeev)
};

struct SolveOptions {
  SolveMethod method = SolveMethod::automatic;
  double infinite_guard = 1e8;  // rad/mm; |k_x| beyond this is discarded
};

/// All finite eigenpairs of (k_x^2 L2 + k_x L1 + L0) u = 0.
std::vector<EigenPair> solve_pep(const PEPMatrices& pep,
                                 const SolveOptions& opts = {});

}  // namespace llw
