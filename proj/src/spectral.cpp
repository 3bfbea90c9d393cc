#include "llw/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace llw {

namespace {

// Barycentric weights for the Gauss-Lobatto Chebyshev points, up to a
// common factor: w_i = (-1)^i, halved at the endpoints.
Eigen::VectorXd lobatto_weights(int n) {
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) {
    w(i) = (i % 2 == 0) ? 1.0 : -1.0;
  }
  w(0) *= 0.5;
  w(n - 1) *= 0.5;
  return w;
}

}  // namespace

ReferenceGrid reference_grid(int n) {
  if (n < 3) {
    throw GridError("reference grid needs at least 3 points");
  }
  ReferenceGrid g;
  g.n_points = n;
  g.s.resize(n);
  for (int i = 0; i < n; ++i) {
    g.s(i) = -std::cos(std::numbers::pi * i / (n - 1));
  }
  g.s(0) = -1.0;
  g.s(n - 1) = 1.0;

  const Eigen::VectorXd w = lobatto_weights(n);
  g.d1.setZero(n, n);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      g.d1(i, j) = (w(j) / w(i)) / (g.s(i) - g.s(j));
      diag -= g.d1(i, j);
    }
    g.d1(i, i) = diag;  // negative sum trick: D1 annihilates constants
  }

  // Welfert recursion for the second-order matrix.
  g.d2.setZero(n, n);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      g.d2(i, j) = 2.0 * g.d1(i, j) * (g.d1(i, i) - 1.0 / (g.s(i) - g.s(j)));
      diag -= g.d2(i, j);
    }
    g.d2(i, i) = diag;
  }
  return g;
}

MappedGrid map_guide(const ReferenceGrid& ref, double d) {
  if (!(d > 0.0)) {
    throw MapError("guide half-thickness must be positive");
  }
  MappedGrid g;
  g.side = Side::guide;
  g.zeta = 0.0;
  g.y = (d * ref.s).cast<Complex>();
  g.d1 = (ref.d1 / d).cast<Complex>();
  g.d2 = (ref.d2 / (d * d)).cast<Complex>();
  g.interface_index = -1;
  g.infinity_index = -1;
  return g;
}

MappedGrid map_half_space(const ReferenceGrid& ref, Side side, double d,
                          Complex zeta) {
  if (side == Side::guide) {
    throw MapError("map_half_space requires side_a or side_b");
  }
  if (zeta == Complex(0.0, 0.0)) {
    throw MapError("zeta must be nonzero");
  }
  if (zeta.real() < 0.0) {
    throw MapError("zeta must have nonnegative real part");
  }
  const int n = ref.n_points;
  MappedGrid g;
  g.side = side;
  g.zeta = zeta;
  g.y.resize(n);

  // Metrics ds/dy and d^2s/dy^2 are evaluated from s to keep the row at the
  // infinity point exactly zero.
  Eigen::VectorXcd m1(n), m2(n);
  const double inf = std::numeric_limits<double>::infinity();
  if (side == Side::side_b) {
    for (int i = 0; i < n; ++i) {
      const double s = ref.s(i);
      if (i == n - 1) {
        g.y(i) = Complex(inf, 0.0);
        m1(i) = 0.0;
        m2(i) = 0.0;
        continue;
      }
      g.y(i) = d + zeta * (1.0 + s) / (1.0 - s);
      const double u = 1.0 - s;
      m1(i) = u * u / (2.0 * zeta);
      m2(i) = -u * u * u / (2.0 * zeta * zeta);
    }
    g.y(0) = Complex(d, 0.0);
    g.interface_index = 0;
    g.infinity_index = n - 1;
  } else {
    for (int i = 0; i < n; ++i) {
      const double s = ref.s(i);
      if (i == 0) {
        g.y(i) = Complex(-inf, 0.0);
        m1(i) = 0.0;
        m2(i) = 0.0;
        continue;
      }
      g.y(i) = -d - zeta * (1.0 - s) / (1.0 + s);
      const double u = 1.0 + s;
      m1(i) = u * u / (2.0 * zeta);
      m2(i) = u * u * u / (2.0 * zeta * zeta);
    }
    g.y(n - 1) = Complex(-d, 0.0);
    g.interface_index = n - 1;
    g.infinity_index = 0;
  }

  g.d1 = m1.asDiagonal() * ref.d1.cast<Complex>();
  g.d2 = (m1.array().square().matrix()).asDiagonal() * ref.d2.cast<Complex>() +
         m2.asDiagonal() * ref.d1.cast<Complex>();
  return g;
}

Complex barycentric_interpolate(const Eigen::VectorXd& x,
                                const Eigen::VectorXcd& f, double xq) {
  const int n = static_cast<int>(x.size());
  const Eigen::VectorXd w = lobatto_weights(n);
  Complex num = 0.0;
  double den = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = xq - x(i);
    if (dx == 0.0) return f(i);
    const double c = w(i) / dx;
    num += c * f(i);
    den += c;
  }
  return num / den;
}

}  // namespace llw
