#pragma once

#include <Eigen/Dense>
#include <complex>

#include "llw/errors.hpp"
#include "llw/materials.hpp"

namespace llw {

/// Chebyshev-Gauss-Lobatto collocation on [-1,1] with s_i increasing,
/// s_0 = -1, s_{N-1} = 1, plus first and second order differentiation
/// matrices built with the barycentric formulas.
struct ReferenceGrid {
  int n_points;
  Eigen::VectorXd s;
  Eigen::MatrixXd d1;
  Eigen::MatrixXd d2;
};

ReferenceGrid reference_grid(int n);

enum class Side { guide, side_a, side_b };

/// Collocation grid mapped onto the guide interval or onto one half-space
/// (rational map, possibly along a complex path when zeta is complex).
struct MappedGrid {
  Side side;
  Complex zeta;             // unused for the guide
  Eigen::VectorXcd y;       // collocation coordinates (complex path allowed)
  Eigen::MatrixXcd d1;
  Eigen::MatrixXcd d2;
  int interface_index;      // point at y = -d (side_a) or y = +d (side_b);
                            // -1 for the guide (both endpoints touch)
  int infinity_index;       // point mapped to infinity; -1 for the guide
};

/// Linear map y = d*s onto [-d, d].
MappedGrid map_guide(const ReferenceGrid& ref, double d);

/// Rational map of [-1,1] onto the half-space beyond y = -d (side_a) or
/// y = +d (side_b); complex zeta discretises a complex path. One point lands
/// exactly on the interface and one at infinity, where the chain-rule metric
/// vanishes.
MappedGrid map_half_space(const ReferenceGrid& ref, Side side, double d,
                          Complex zeta);

/// Barycentric interpolation of samples f on the Gauss-Lobatto family grid x
/// (any affine image of the reference points) at the query point xq.
Complex barycentric_interpolate(const Eigen::VectorXd& x,
                                const Eigen::VectorXcd& f, double xq);

}  // namespace llw
