#include "llw/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace llw {

Complex select_branch(Complex k_y_sq, WaveKind kind) {
  Complex r = std::sqrt(k_y_sq);  // principal: Re(r) >= 0
  if (kind == WaveKind::evanescent) {
    if (r.imag() < 0.0) r = -r;
    if (r.imag() == 0.0 && r.real() < 0.0) r = -r;
  } else {
    if (r.imag() > 0.0) r = -r;
    if (r.imag() == 0.0 && r.real() < 0.0) r = -r;
  }
  return r;
}

namespace oracle {

namespace {

constexpr Complex kI{0.0, 1.0};

using Mat8 = Eigen::Matrix<Complex, 8, 8>;
using Vec8 = Eigen::Matrix<Complex, 8, 1>;

Mat8 row_scaled(const Mat8& m) {
  Mat8 out = m;
  for (int i = 0; i < 8; ++i) {
    const double nrm = out.row(i).norm();
    if (nrm > 0.0) out.row(i) /= nrm;
  }
  return out;
}

}  // namespace

BranchKinds branch_kinds(const RadiationCase& cse) {
  return {cse.side_a_long, cse.side_a_shear, cse.side_b_long,
          cse.side_b_shear};
}

Mat8 characteristic_matrix(const TriLayerSystem& sys, double omega,
                           Complex k_x, const BranchKinds& kinds) {
  const Material& mg = sys.guide;
  const double d = sys.half_thickness_d;
  const Complex kx2 = k_x * k_x;

  // Guide partial-wave wavenumbers; both signs enter through the columns, so
  // the branch here only permutes columns.
  const Complex kl = std::sqrt(transverse_wavenumber_sq(omega / mg.c_l, k_x));
  const Complex kt = std::sqrt(transverse_wavenumber_sq(omega / mg.c_t, k_x));

  // Half-space outgoing wavenumbers on the physical branches.
  const Complex kyl1 = select_branch(
      transverse_wavenumber_sq(omega / sys.side_a.c_l, k_x), kinds.a_long);
  const Complex kyt1 = select_branch(
      transverse_wavenumber_sq(omega / sys.side_a.c_t, k_x), kinds.a_shear);
  const Complex kyl2 = select_branch(
      transverse_wavenumber_sq(omega / sys.side_b.c_l, k_x), kinds.b_long);
  const Complex kyt2 = select_branch(
      transverse_wavenumber_sq(omega / sys.side_b.c_t, k_x), kinds.b_shear);

  Mat8 M = Mat8::Zero();

  // Columns 0..3: guide amplitudes (A1 e^{+i kl y} + A2 e^{-i kl y} for phi,
  // A3/A4 likewise for psi) with u_x = i k_x phi - psi',
  // u_y = phi' + i k_x psi.
  struct GuideTrace {
    Vec8 ux = Vec8::Zero(), uy = Vec8::Zero(), dux = Vec8::Zero(),
         duy = Vec8::Zero();
  };
  auto guide_trace = [&](double y) {
    GuideTrace t;
    const Complex elp = std::exp(kI * kl * y), elm = std::exp(-kI * kl * y);
    const Complex etp = std::exp(kI * kt * y), etm = std::exp(-kI * kt * y);
    t.ux(0) = kI * k_x * elp;
    t.ux(1) = kI * k_x * elm;
    t.ux(2) = -kI * kt * etp;
    t.ux(3) = kI * kt * etm;
    t.uy(0) = kI * kl * elp;
    t.uy(1) = -kI * kl * elm;
    t.uy(2) = kI * k_x * etp;
    t.uy(3) = kI * k_x * etm;
    t.dux(0) = -k_x * kl * elp;
    t.dux(1) = k_x * kl * elm;
    t.dux(2) = kt * kt * etp;
    t.dux(3) = kt * kt * etm;
    t.duy(0) = -kl * kl * elp;
    t.duy(1) = -kl * kl * elm;
    t.duy(2) = -k_x * kt * etp;
    t.duy(3) = k_x * kt * etm;
    return t;
  };

  struct HalfSpace {
    const Material* mat;
    Complex kyl, kyt;
    double sign;  // d(eta)/dy: -1 for side_a, +1 for side_b
    int col_b, col_c;
    double y;  // interface coordinate
  };
  const HalfSpace hs[2] = {
      {&sys.side_a, kyl1, kyt1, -1.0, 4, 5, -d},
      {&sys.side_b, kyl2, kyt2, +1.0, 6, 7, d},
  };

  for (int s = 0; s < 2; ++s) {
    const HalfSpace& h = hs[s];
    const Material& mh = *h.mat;
    const GuideTrace t = guide_trace(h.y);
    const int r = 4 * s;

    // Normal stress continuity.
    M.row(r).head<4>() = ((mg.lambda + 2.0 * mg.mu) * t.duy +
                          mg.lambda * kI * k_x * t.ux)
                             .head<4>();
    M(r, h.col_b) = mh.lambda * kx2 + (mh.lambda + 2.0 * mh.mu) * h.kyl *
                                          h.kyl;
    M(r, h.col_c) = 2.0 * mh.mu * k_x * h.kyt * h.sign;

    // Shear stress continuity.
    M.row(r + 1).head<4>() =
        (mg.mu * (kI * k_x * t.uy + t.dux)).head<4>();
    M(r + 1, h.col_b) = 2.0 * mh.mu * k_x * h.kyl * h.sign;
    M(r + 1, h.col_c) = mh.mu * (kx2 - h.kyt * h.kyt);

    // Displacement continuity, u_x then u_y.
    M.row(r + 2).head<4>() = t.ux.head<4>();
    M(r + 2, h.col_b) = -kI * k_x;
    M(r + 2, h.col_c) = kI * h.kyt * h.sign;

    M.row(r + 3).head<4>() = t.uy.head<4>();
    M(r + 3, h.col_b) = -kI * h.kyl * h.sign;
    M(r + 3, h.col_c) = -kI * k_x;
  }
  return M;
}

Complex characteristic_determinant(const TriLayerSystem& sys, double omega,
                                   Complex k_x, const BranchKinds& kinds) {
  if (!(omega > 0.0)) {
    throw Error("oracle requires positive omega");
  }
  return row_scaled(characteristic_matrix(sys, omega, k_x, kinds))
      .determinant();
}

Vec8 null_amplitudes(const TriLayerSystem& sys, double omega, Complex k_x,
                     const BranchKinds& kinds) {
  const Mat8 M = row_scaled(characteristic_matrix(sys, omega, k_x, kinds));
  Eigen::JacobiSVD<Mat8> svd(M, Eigen::ComputeFullV);
  return svd.matrixV().col(7);
}

RefineResult refine_root(const TriLayerSystem& sys, double omega,
                         Complex k_x_seed, const BranchKinds& kinds) {
  // Fixed row scaling from the seed keeps the determinant analytic in k_x
  // while controlling its magnitude.
  Mat8 seed_m = characteristic_matrix(sys, omega, k_x_seed, kinds);
  Eigen::Matrix<double, 8, 1> scale;
  for (int i = 0; i < 8; ++i) {
    const double nrm = seed_m.row(i).norm();
    scale(i) = nrm > 0.0 ? 1.0 / nrm : 1.0;
  }
  auto det = [&](Complex k) {
    Mat8 M = characteristic_matrix(sys, omega, k, kinds);
    for (int i = 0; i < 8; ++i) M.row(i) *= scale(i);
    return M.determinant();
  };

  RefineResult res;
  Complex k = k_x_seed;
  for (int it = 0; it < 50; ++it) {
    const double h = 1e-7 * std::max(std::abs(k), 1.0);
    const Complex f = det(k);
    const Complex df = (det(k + h) - det(k - h)) / (2.0 * h);
    if (!(std::abs(df) > 0.0)) break;
    const Complex dk = f / df;
    k -= dk;
    res.iterations = it + 1;
    if (!std::isfinite(k.real()) || !std::isfinite(k.imag())) break;
    if (std::abs(dk) > 10.0 * std::max(std::abs(k_x_seed), 1.0)) break;
    if (std::abs(dk) <= 1e-10 * std::abs(k)) {
      res.converged = true;
      break;
    }
  }
  res.k_x = k;
  return res;
}

double rayleigh_lamb_function(const Material& guide, double d, double omega,
                              LambSymmetry sym, double k_x) {
  const Complex p = std::sqrt(
      Complex(omega * omega / (guide.c_l * guide.c_l) - k_x * k_x, 0.0));
  const Complex q = std::sqrt(
      Complex(omega * omega / (guide.c_t * guide.c_t) - k_x * k_x, 0.0));
  const Complex q2k2 = q * q - k_x * k_x;
  // tan(z)/z is finite through z = 0.
  auto tanz_over_z = [&](Complex z) {
    if (std::abs(z) < 1e-8) return Complex(1.0, 0.0);
    return std::tan(z * d) / (z * d);
  };
  if (sym == LambSymmetry::S) {
    // (q^2-k^2)^2 tan(qd)/q + 4 k^2 p tan(pd), real for real k_x.
    const Complex f = q2k2 * q2k2 * tanz_over_z(q) * d +
                      4.0 * k_x * k_x * (p * std::tan(p * d));
    return f.real();
  }
  // 4 k^2 q tan(qd) + (q^2-k^2)^2 tan(pd)/p.
  const Complex f = 4.0 * k_x * k_x * (q * std::tan(q * d)) +
                    q2k2 * q2k2 * tanz_over_z(p) * d;
  return f.real();
}

namespace {

// Relative cancellation of the two terms of the characteristic function;
// small only at genuine roots (poles of tan leave it O(1)).
double rl_relative_residual(const Material& guide, double d, double omega,
                            LambSymmetry sym, double k_x) {
  const Complex p = std::sqrt(
      Complex(omega * omega / (guide.c_l * guide.c_l) - k_x * k_x, 0.0));
  const Complex q = std::sqrt(
      Complex(omega * omega / (guide.c_t * guide.c_t) - k_x * k_x, 0.0));
  const Complex q2k2 = q * q - k_x * k_x;
  auto tanz_over_z = [&](Complex z) {
    if (std::abs(z) < 1e-8) return Complex(1.0, 0.0);
    return std::tan(z * d) / (z * d);
  };
  Complex t1, t2;
  if (sym == LambSymmetry::S) {
    t1 = q2k2 * q2k2 * tanz_over_z(q) * d;
    t2 = 4.0 * k_x * k_x * (p * std::tan(p * d));
  } else {
    t1 = 4.0 * k_x * k_x * (q * std::tan(q * d));
    t2 = q2k2 * q2k2 * tanz_over_z(p) * d;
  }
  const double denom = std::abs(t1) + std::abs(t2);
  return denom > 0.0 ? std::abs((t1 + t2).real()) / denom : 0.0;
}

}  // namespace

std::vector<double> rayleigh_lamb_roots(const Material& guide, double d,
                                        double omega, LambSymmetry sym) {
  if (!(omega > 0.0)) {
    throw Error("rayleigh_lamb_roots requires positive omega");
  }
  std::vector<double> roots;
  const double c_lo = 0.02;   // mm/us, below any flexural branch of interest
  const double c_hi = 60.0;
  const double k_min = omega / c_hi;
  const double k_max = omega / c_lo;
  const int n_scan = 20000;

  auto f = [&](double k) {
    return rayleigh_lamb_function(guide, d, omega, sym, k);
  };

  double k_prev = k_min;
  double f_prev = f(k_prev);
  for (int i = 1; i <= n_scan; ++i) {
    const double k = k_min + (k_max - k_min) * i / n_scan;
    const double fk = f(k);
    if (std::isfinite(f_prev) && std::isfinite(fk) &&
        ((f_prev < 0.0 && fk > 0.0) || (f_prev > 0.0 && fk < 0.0))) {
      double a = k_prev, b = k, fa = f_prev;
      for (int it = 0; it < 80 && (b - a) > 1e-13 * b; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fa < 0.0) == (fm < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      const double root = 0.5 * (a + b);
      // Reject tan poles: bisection converges to them as well.
      if (rl_relative_residual(guide, d, omega, sym, root) < 1e-8) {
        if (roots.empty() || root > roots.back() * (1.0 + 1e-9)) {
          roots.push_back(root);
        }
      }
    }
    k_prev = k;
    f_prev = fk;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace oracle
}  // namespace llw
