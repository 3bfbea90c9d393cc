#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "llw/errors.hpp"

namespace llw {

using Complex = std::complex<double>;

/// Isotropic elastic medium in the fixed unit system mm / us / mg:
/// densities in g/cm^3 (= mg/mm^3), wavespeeds in mm/us (= km/s) and the
/// derived Lame parameters in GPa.
struct Material {
  std::string name;
  double rho;     // g/cm^3
  double c_l;     // mm/us, longitudinal bulk wavespeed
  double c_t;     // mm/us, transverse bulk wavespeed
  double lambda;  // GPa, derived
  double mu;      // GPa, derived

  // When require_nonneg_poisson is set, lambda >= 0 is enforced as well.
  Material(std::string name, double rho, double c_l, double c_t,
           bool require_nonneg_poisson = false);
};

/// mu = rho*c_t^2, lambda = rho*c_l^2 - 2*mu. Throws MaterialError on
/// non-positive inputs or c_l <= c_t.
std::pair<double, double> lame_from_speeds(double rho, double c_l, double c_t);

/// Inverse of lame_from_speeds: (c_l, c_t) from (rho, lambda, mu).
std::pair<double, double> speeds_from_lame(double rho, double lambda,
                                           double mu);

struct BulkWavenumbers {
  double k_l;  // rad/mm
  double k_t;  // rad/mm
};

/// k_l = omega/c_l, k_t = omega/c_t for omega in rad/us.
BulkWavenumbers bulk_wavenumbers(const Material& m, double omega);

/// k_bulk^2 - k_x^2; branch selection for the square root is done elsewhere.
inline Complex transverse_wavenumber_sq(double k_bulk, Complex k_x) {
  return Complex(k_bulk * k_bulk, 0.0) - k_x * k_x;
}

/// Plate of half-thickness d bonded between two elastic half-spaces.
/// side_a occupies y <= -d (medium index 1), side_b occupies y >= d
/// (medium index 2); the plate occupies -d <= y <= d.
struct TriLayerSystem {
  Material side_a;
  Material guide;
  Material side_b;
  double half_thickness_d;  // mm

  TriLayerSystem(Material side_a, Material guide, Material side_b, double d);
};

Material epoxy();
Material aluminium();
const std::vector<Material>& material_presets();

}  // namespace llw
