#include "llw/materials.hpp"

#include <cmath>
#include <utility>

namespace llw {

std::pair<double, double> lame_from_speeds(double rho, double c_l,
                                           double c_t) {
  if (!(rho > 0.0) || !(c_l > 0.0) || !(c_t > 0.0)) {
    throw MaterialError("material parameters must be positive");
  }
  if (!(c_l > c_t)) {
    throw MaterialError("longitudinal wavespeed must exceed transverse");
  }
  const double mu = rho * c_t * c_t;
  const double lambda = rho * c_l * c_l - 2.0 * mu;
  return {lambda, mu};
}

std::pair<double, double> speeds_from_lame(double rho, double lambda,
                                           double mu) {
  if (!(rho > 0.0) || !(mu > 0.0)) {
    throw MaterialError("density and shear modulus must be positive");
  }
  const double c_t = std::sqrt(mu / rho);
  const double c_l = std::sqrt((lambda + 2.0 * mu) / rho);
  return {c_l, c_t};
}

Material::Material(std::string name_, double rho_, double c_l_, double c_t_,
                   bool require_nonneg_poisson)
    : name(std::move(name_)), rho(rho_), c_l(c_l_), c_t(c_t_) {
  auto [lam, m] = lame_from_speeds(rho, c_l, c_t);
  if (require_nonneg_poisson && lam < 0.0) {
    throw MaterialError("material '" + name + "' has negative lambda");
  }
  lambda = lam;
  mu = m;
}

BulkWavenumbers bulk_wavenumbers(const Material& m, double omega) {
  if (omega < 0.0) {
    throw MaterialError("angular frequency must be nonnegative");
  }
  return {omega / m.c_l, omega / m.c_t};
}

TriLayerSystem::TriLayerSystem(Material side_a_, Material guide_,
                               Material side_b_, double d)
    : side_a(std::move(side_a_)),
      guide(std::move(guide_)),
      side_b(std::move(side_b_)),
      half_thickness_d(d) {
  if (!(d > 0.0)) {
    throw MaterialError("half thickness must be positive");
  }
}

Material epoxy() { return Material("epoxy", 1.17, 2.61, 1.1); }

Material aluminium() { return Material("aluminium", 2.82, 6.33, 3.12); }

const std::vector<Material>& material_presets() {
  static const std::vector<Material> presets = {epoxy(), aluminium()};
  return presets;
}

}  // namespace llw
