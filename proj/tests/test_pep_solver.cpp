#include <doctest/doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "llw/pep_solver.hpp"

using namespace llw;

namespace {
constexpr double kPi = 3.14159265358979323846;

PEPMatrices scalar_pep(Complex l2, Complex l1, Complex l0) {
  PEPMatrices pep;
  pep.n = 1;
  pep.l2.resize(1, 1);
  pep.l1.resize(1, 1);
  pep.l0.resize(1, 1);
  pep.l2(0, 0) = l2;
  pep.l1(0, 0) = l1;
  pep.l0(0, 0) = l0;
  return pep;
}
}  // namespace

TEST_SUITE("pep_solver") {

TEST_CASE("scalar quadratic k^2 - 3k + 2 has roots {1, 2}") {
  const PEPMatrices pep = scalar_pep(1.0, -3.0, 2.0);
  for (SolveMethod m :
       {SolveMethod::automatic, SolveMethod::pencil, SolveMethod::reciprocal}) {
    auto pairs = solve_pep(pep, SolveOptions{m});
    REQUIRE(pairs.size() == 2);
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
      return a.k_x.real() < b.k_x.real();
    });
    CHECK(std::abs(pairs[0].k_x - Complex(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(pairs[1].k_x - Complex(2.0, 0.0)) < 1e-12);
    CHECK(pairs[0].backward_error < 1e-14);
    CHECK(pairs[1].backward_error < 1e-14);
  }
}

TEST_CASE("singular leading coefficient: one infinite root is discarded") {
  // 0*k^2 + k - 5 = 0 has the single finite root k = 5.
  const PEPMatrices pep = scalar_pep(0.0, 1.0, -5.0);
  const auto pairs = solve_pep(pep, SolveOptions{SolveMethod::pencil});
  REQUIRE(pairs.size() == 1);
  CHECK(std::abs(pairs[0].k_x - Complex(5.0, 0.0)) < 1e-12);
}

TEST_CASE("fully degenerate problem throws SolverError") {
  // Both roots at infinity: L2 = L1 = 0.
  const PEPMatrices pep = scalar_pep(0.0, 0.0, 1.0);
  CHECK_THROWS_AS(solve_pep(pep, SolveOptions{SolveMethod::pencil}),
                  SolverError);
}

TEST_CASE("pencil and reciprocal routes agree on the physical problem") {
  const TriLayerSystem sys(aluminium(), epoxy(), aluminium(), 0.5);
  const auto cases = enumerate_cases(sys);
  const ReferenceGrid ref = reference_grid(16);
  const CaseGrids grids = make_case_grids(sys, cases[0], ref);
  PEPMatrices pep = assemble_pep(sys, 2.0 * kPi * 1.0, cases[0], grids);
  equilibrate_rows(pep);

  const auto ev_p = solve_pep(pep, SolveOptions{SolveMethod::pencil});
  const auto ev_r = solve_pep(pep, SolveOptions{SolveMethod::reciprocal});
  // Every moderate eigenvalue from one route appears in the other.
  int matched = 0, moderate = 0;
  for (const EigenPair& a : ev_r) {
    if (std::abs(a.k_x) > 1e2 || std::abs(a.k_x) < 1e-2) continue;
    ++moderate;
    double best = 1e300;
    for (const EigenPair& b : ev_p) {
      best = std::min(best, std::abs(a.k_x - b.k_x) / std::abs(a.k_x));
    }
    if (best < 1e-8) ++matched;
  }
  CHECK(moderate > 30);
  CHECK(matched == moderate);
}

TEST_CASE("eigenvalues of an all-evanescent real-path case close under "
          "conjugation k -> -conj(k)") {
  // With real zeta the matrices satisfy conj(L_k) = (-1)^k L_k, so the
  // spectrum is symmetric under k -> -conj(k).
  const TriLayerSystem sys(aluminium(), epoxy(), aluminium(), 0.5);
  const auto cases = enumerate_cases(sys);
  REQUIRE(cases[0].zeta_phi_a.imag() == 0.0);
  const ReferenceGrid ref = reference_grid(14);
  const CaseGrids grids = make_case_grids(sys, cases[0], ref);
  PEPMatrices pep = assemble_pep(sys, 2.0 * kPi * 1.0, cases[0], grids);
  equilibrate_rows(pep);
  const auto pairs = solve_pep(pep);
  int checked = 0;
  for (const EigenPair& a : pairs) {
    if (std::abs(a.k_x) > 1e2 || std::abs(a.k_x) < 1e-1) continue;
    ++checked;
    const Complex mirror = -std::conj(a.k_x);
    double best = 1e300;
    for (const EigenPair& b : pairs) {
      best = std::min(best, std::abs(b.k_x - mirror) / std::abs(mirror));
    }
    CHECK(best < 1e-7);
  }
  CHECK(checked > 20);
}

TEST_CASE("backward errors at N = 50, f = 1.03 MHz are below 1e-8") {
  const TriLayerSystem sys(aluminium(), epoxy(), aluminium(), 0.5);
  const auto cases = enumerate_cases(sys);
  const ReferenceGrid ref = reference_grid(50);
  const CaseGrids grids = make_case_grids(sys, cases[0], ref);
  PEPMatrices pep = assemble_pep(sys, 2.0 * kPi * 1.03, cases[0], grids);
  equilibrate_rows(pep);
  const auto pairs = solve_pep(pep);
  CHECK(pairs.size() > 100);
  for (const EigenPair& p : pairs) {
    CHECK(p.backward_error < 1e-8);
  }
}

TEST_CASE("eigenvectors are normalized to unit max entry") {
  const PEPMatrices pep = scalar_pep(1.0, -3.0, 2.0);
  for (const EigenPair& p : solve_pep(pep)) {
    CHECK(p.vector.cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

}  // TEST_SUITE
