#include "llw/pep_solver.hpp"

#include <cmath>
#include <complex>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace llw {

namespace {

double quadratic_backward_error(const PEPMatrices& pep, Complex k,
                                const Eigen::VectorXcd& u, double n0,
                                double n1, double n2) {
  const double unorm = u.norm();
  const Eigen::VectorXcd r =
      k * k * (pep.l2 * u) + k * (pep.l1 * u) + pep.l0 * u;
  const double scale =
      (std::norm(k) * n2 + std::abs(k) * n1 + n0) * unorm;
  return scale > 0.0 ? r.norm() / scale : r.norm();
}

Eigen::VectorXcd normalize_max(Eigen::VectorXcd v) {
  Eigen::Index imax;
  v.cwiseAbs().maxCoeff(&imax);
  if (std::abs(v(imax)) > 0.0) v /= v(imax);
  return v;
}

std::vector<EigenPair> finish_pairs(const PEPMatrices& pep,
                                    const std::vector<Complex>& values,
                                    const Eigen::MatrixXcd& vectors,
                                    const std::vector<int>& cols) {
  const double n0 = pep.l0.norm();
  const double n1 = pep.l1.norm();
  const double n2 = pep.l2.norm();
  std::vector<EigenPair> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    EigenPair p;
    p.k_x = values[i];
    p.vector = normalize_max(vectors.col(cols[i]));
    p.backward_error = quadratic_backward_error(pep, p.k_x, p.vector, n0, n1,
                                                n2);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<EigenPair> solve_pencil(const PEPMatrices& pep,
                                    const SolveOptions& opts) {
  const int m = static_cast<int>(pep.l0.rows());
  const int nn = 2 * m;
  // First companion pencil A z = k B z with z = (k u, u):
  //   A = [[-L1, -L0], [I, 0]],  B = [[L2, 0], [0, I]].
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(nn, nn);
  Eigen::MatrixXcd Bm = Eigen::MatrixXcd::Zero(nn, nn);
  A.topLeftCorner(m, m) = -pep.l1;
  A.topRightCorner(m, m) = -pep.l0;
  A.bottomLeftCorner(m, m).setIdentity();
  Bm.topLeftCorner(m, m) = pep.l2;
  Bm.bottomRightCorner(m, m).setIdentity();

  Eigen::VectorXcd alpha(nn), beta(nn);
  Eigen::MatrixXcd vr(nn, nn);
  const int info = LAPACKE_zggev3(LAPACK_COL_MAJOR, 'N', 'V', nn, A.data(),
                                  nn, Bm.data(), nn, alpha.data(),
                                  beta.data(), nullptr, 1, vr.data(), nn);
  if (info != 0) {
    throw SolverError("zggev3 failed with info=" + std::to_string(info));
  }

  std::vector<Complex> values;
  std::vector<int> cols;
  Eigen::MatrixXcd lower = vr.bottomRows(m);
  Eigen::MatrixXcd upper = vr.topRows(m);
  Eigen::MatrixXcd vecs(m, nn);
  for (int j = 0; j < nn; ++j) {
    if (std::abs(beta(j)) == 0.0) continue;
    const Complex k = alpha(j) / beta(j);
    if (!std::isfinite(k.real()) || !std::isfinite(k.imag())) continue;
    if (std::abs(k) > opts.infinite_guard) continue;
    // z = (k u, u); take whichever block carries more weight.
    Eigen::VectorXcd u = lower.col(j);
    if (std::abs(k) > 1.0 && upper.col(j).norm() > u.norm() * std::abs(k)) {
      u = upper.col(j) / k;
    }
    if (u.norm() == 0.0) continue;
    vecs.col(static_cast<int>(values.size())) = u;
    cols.push_back(static_cast<int>(values.size()));
    values.push_back(k);
  }
  if (values.empty()) {
    throw SolverError("all eigenvalues at infinity (degenerate problem)");
  }
  return finish_pairs(pep, values, vecs, cols);
}

std::vector<EigenPair> solve_reciprocal(const PEPMatrices& pep,
                                        const SolveOptions& opts,
                                        bool* ill_conditioned) {
  const int m = static_cast<int>(pep.l0.rows());
  // Reciprocal problem in mu = 1/k: (mu^2 L0 + mu L1 + L2) u = 0, companion
  // C = [[-L0^{-1} L1, -L0^{-1} L2], [I, 0]] with z = (mu u, u).
  Eigen::MatrixXcd lu = pep.l0;
  std::vector<lapack_int> ipiv(m);
  int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, m, m, lu.data(), m,
                            ipiv.data());
  if (info == 0) {
    const double anorm = pep.l0.cwiseAbs().rowwise().sum().maxCoeff();
    double rcond = 0.0;
    info = LAPACKE_zgecon(LAPACK_COL_MAJOR, 'I', m, lu.data(), m, anorm,
                          &rcond);
    if (info == 0 && rcond < 1e-14) info = -1000;
  }
  if (info != 0) {
    if (ill_conditioned) {
      *ill_conditioned = true;
      return {};
    }
    throw SolverError("L0 is singular; reciprocal companion unavailable");
  }

  Eigen::MatrixXcd rhs(m, 2 * m);
  rhs.leftCols(m) = pep.l1;
  rhs.rightCols(m) = pep.l2;
  info = LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', m, 2 * m, lu.data(), m,
                        ipiv.data(), rhs.data(), m);
  if (info != 0) {
    throw SolverError("zgetrs failed with info=" + std::to_string(info));
  }

  const int nn = 2 * m;
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(nn, nn);
  C.topLeftCorner(m, m) = -rhs.leftCols(m);
  C.topRightCorner(m, m) = -rhs.rightCols(m);
  C.bottomLeftCorner(m, m).setIdentity();

  Eigen::VectorXcd w(nn);
  Eigen::MatrixXcd vr(nn, nn);
  info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', nn, C.data(), nn, w.data(),
                       nullptr, 1, vr.data(), nn);
  if (info != 0) {
    throw SolverError("zgeev failed with info=" + std::to_string(info));
  }

  std::vector<Complex> values;
  std::vector<int> cols;
  Eigen::MatrixXcd vecs(m, nn);
  for (int j = 0; j < nn; ++j) {
    const Complex mu = w(j);
    if (std::abs(mu) * opts.infinite_guard < 1.0) continue;  // k at infinity
    const Complex k = 1.0 / mu;
    Eigen::VectorXcd u = vr.col(j).tail(m);
    if (std::abs(mu) > 1.0 &&
        vr.col(j).head(m).norm() > u.norm() * std::abs(mu)) {
      u = vr.col(j).head(m) / mu;
    }
    if (u.norm() == 0.0) continue;
    vecs.col(static_cast<int>(values.size())) = u;
    cols.push_back(static_cast<int>(values.size()));
    values.push_back(k);
  }
  if (values.empty()) {
    throw SolverError("all eigenvalues at infinity (degenerate problem)");
  }
  return finish_pairs(pep, values, vecs, cols);
}

}  // namespace

std::vector<EigenPair> solve_pep(const PEPMatrices& pep,
                                 const SolveOptions& opts) {
  const auto m = pep.l0.rows();
  if (pep.l0.cols() != m || pep.l1.rows() != m || pep.l1.cols() != m ||
      pep.l2.rows() != m || pep.l2.cols() != m || m < 1) {
    throw SolverError("PEP matrices must be square and of equal size");
  }
  switch (opts.method) {
    case SolveMethod::pencil:
      return solve_pencil(pep, opts);
    case SolveMethod::reciprocal:
      return solve_reciprocal(pep, opts, nullptr);
    case SolveMethod::automatic: {
      bool ill = false;
      auto pairs = solve_reciprocal(pep, opts, &ill);
      if (ill) return solve_pencil(pep, opts);
      return pairs;
    }
  }
  throw SolverError("unknown solve method");
}

}  // namespace llw
