#include <doctest/doctest.h>

#include <cmath>
#include <complex>

#include "llw/assembly.hpp"
#include "llw/pep_solver.hpp"

using namespace llw;

namespace {
constexpr double kPi = 3.14159265358979323846;

TriLayerSystem paper_system() {
  return TriLayerSystem(aluminium(), epoxy(), aluminium(), 0.5);
}
}  // namespace

TEST_SUITE("assembly") {

TEST_CASE("epoxy between aluminium yields three radiation cases") {
  const auto cases = enumerate_cases(paper_system());
  REQUIRE(cases.size() == 3);

  CHECK(cases[0].id == "case0:evanescent");
  CHECK(cases[0].c_min == 0.0);
  CHECK(cases[0].c_max == doctest::Approx(3.12));
  CHECK(cases[0].side_a_shear == WaveKind::evanescent);
  CHECK(cases[0].side_a_long == WaveKind::evanescent);
  CHECK(cases[0].side_b_shear == WaveKind::evanescent);
  CHECK(cases[0].side_b_long == WaveKind::evanescent);

  CHECK(cases[1].id == "case1:shear_leaky");
  CHECK(cases[1].c_min == doctest::Approx(3.12));
  CHECK(cases[1].c_max == doctest::Approx(6.33));
  CHECK(cases[1].side_a_shear == WaveKind::leaky);
  CHECK(cases[1].side_a_long == WaveKind::evanescent);

  CHECK(cases[2].id == "case2:fully_leaky");
  CHECK(cases[2].c_min == doctest::Approx(6.33));
  CHECK(std::isinf(cases[2].c_max));
  CHECK(cases[2].side_a_long == WaveKind::leaky);
  CHECK(cases[2].side_b_long == WaveKind::leaky);

  // Default path parameters: real for evanescent, imaginary for leaky.
  CHECK(cases[0].zeta_phi_a == Complex(10.0, 0.0));
  CHECK(cases[1].zeta_psi_a == Complex(0.0, 10.0));
  CHECK(cases[1].zeta_phi_a == Complex(10.0, 0.0));
  CHECK(cases[2].zeta_phi_b == Complex(0.0, 10.0));
}

TEST_CASE("dissimilar half-spaces yield five radiation cases") {
  // side_b with distinct bulk speeds from aluminium splits all four speeds.
  const Material brass("brass", 8.44, 4.70, 2.11);
  const TriLayerSystem sys(aluminium(), epoxy(), brass, 0.5);
  const auto cases = enumerate_cases(sys);
  REQUIRE(cases.size() == 5);
  // Interval edges are the sorted distinct bulk speeds {2.11,3.12,4.70,6.33}.
  CHECK(cases[0].c_max == doctest::Approx(2.11));
  CHECK(cases[1].c_max == doctest::Approx(3.12));
  CHECK(cases[2].c_max == doctest::Approx(4.70));
  CHECK(cases[3].c_max == doctest::Approx(6.33));
  CHECK(std::isinf(cases[4].c_max));
  CHECK(cases[0].id == "case0:evanescent");
  CHECK(cases[1].side_b_shear == WaveKind::leaky);
  CHECK(cases[1].side_a_shear == WaveKind::evanescent);
  CHECK(cases[1].id == "case1:shear_leaky");
  CHECK(cases[2].id == "case2:shear_leaky");
  CHECK(cases[3].side_b_long == WaveKind::leaky);
  CHECK(cases[3].side_a_long == WaveKind::evanescent);
  CHECK(cases[3].id == "case3:mixed_leaky");
  CHECK(cases[4].id == "case4:fully_leaky");
}

TEST_CASE("assembled PEP has size 6N and eight replaced rows") {
  const TriLayerSystem sys = paper_system();
  const auto cases = enumerate_cases(sys);
  const ReferenceGrid ref = reference_grid(12);
  const CaseGrids grids = make_case_grids(sys, cases[0], ref);
  const PEPMatrices pep = assemble_pep(sys, 2.0 * kPi * 1.03, cases[0], grids);
  CHECK(pep.n == 12);
  CHECK(pep.l0.rows() == 72);
  CHECK(pep.l0.cols() == 72);
  CHECK(pep.l1.rows() == 72);
  CHECK(pep.l2.rows() == 72);
  REQUIRE(pep.replaced_rows.size() == 8);
  int at_minus = 0, at_plus = 0;
  for (const auto& [row, tag] : pep.replaced_rows) {
    CHECK(row >= 0);
    CHECK(row < 72);
    if (tag.find("@-d") != std::string::npos) ++at_minus;
    if (tag.find("@+d") != std::string::npos) ++at_plus;
  }
  CHECK(at_minus == 4);
  CHECK(at_plus == 4);
}

TEST_CASE("L2 is diagonal away from replaced rows; L1 couples u_x and u_y") {
  const TriLayerSystem sys = paper_system();
  const auto cases = enumerate_cases(sys);
  const ReferenceGrid ref = reference_grid(10);
  const CaseGrids grids = make_case_grids(sys, cases[1], ref);
  const PEPMatrices pep = assemble_pep(sys, 2.0 * kPi * 1.0, cases[1], grids);

  std::vector<bool> replaced(60, false);
  for (const auto& [row, tag] : pep.replaced_rows) replaced[row] = true;
  for (int i = 0; i < 60; ++i) {
    if (replaced[i]) continue;
    for (int j = 0; j < 60; ++j) {
      if (j != i) CHECK(pep.l2(i, j) == Complex(0, 0));
    }
    CHECK(std::abs(pep.l2(i, i)) > 0.0);
  }
}

TEST_CASE("interior block formulas (small-N audit)") {
  const TriLayerSystem sys = paper_system();
  const auto cases = enumerate_cases(sys);
  const double omega = 2.0 * kPi * 1.5;
  const ReferenceGrid ref = reference_grid(9);
  const CaseGrids grids = make_case_grids(sys, cases[0], ref);
  const PEPMatrices pep = assemble_pep(sys, omega, cases[0], grids);
  const int n = 9;
  const BlockLayout B{n};
  const double w2 = omega * omega;
  const Material& al = sys.side_a;
  const Material& ep = sys.guide;

  // phi1 interior row i (the interface row n-1 and infinity row 0 excluded):
  // (lambda+2mu) D2 + rho w^2 I in L0; -(lambda+2mu) in L2.
  const double stiff = al.lambda + 2.0 * al.mu;
  for (int i = 1; i < n - 1; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex want = stiff * grids.phi_a.d2(i, j);
      if (i == j) want += al.rho * w2;
      CHECK(std::abs(pep.l0(B.phi1() + i, B.phi1() + j) - want) < 1e-12);
    }
    CHECK(pep.l2(B.phi1() + i, B.phi1() + i) == Complex(-stiff, 0.0));
    CHECK(pep.l1.row(B.phi1() + i).cwiseAbs().maxCoeff() == 0.0);
  }

  // guide u_x interior row i: mu D2 + rho w^2 I in L0,
  // i (lambda+mu) D1 into the u_y block of L1, -(lambda+2mu) in L2.
  for (int i = 1; i < n - 1; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex want = ep.mu * grids.guide.d2(i, j);
      if (i == j) want += ep.rho * w2;
      CHECK(std::abs(pep.l0(B.ux() + i, B.ux() + j) - want) < 1e-12);
      const Complex l1want =
          Complex(0, 1) * (ep.lambda + ep.mu) * grids.guide.d1(i, j);
      CHECK(std::abs(pep.l1(B.ux() + i, B.uy() + j) - l1want) < 1e-12);
    }
    CHECK(pep.l2(B.ux() + i, B.ux() + i) ==
          Complex(-(ep.lambda + 2.0 * ep.mu), 0.0));
    CHECK(pep.l2(B.uy() + i, B.uy() + i) == Complex(-ep.mu, 0.0));
  }
}

TEST_CASE("symmetric system commutes with the block parity operator") {
  const TriLayerSystem sys = paper_system();
  const auto cases = enumerate_cases(sys);
  const int n = 12;
  const ReferenceGrid ref = reference_grid(n);
  for (const RadiationCase& cse : cases) {
    const CaseGrids grids = make_case_grids(sys, cse, ref);
    const PEPMatrices pep = assemble_pep(sys, 2.0 * kPi * 1.03, cse, grids);

    // P: index reversal within each block; phi1<->phi2 (+), psi1<->psi2 (-),
    // u_x -> u_x (+), u_y -> u_y (-).
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(6 * n, 6 * n);
    const BlockLayout B{n};
    auto place = [&](int rb, int cb, double sign) {
      for (int i = 0; i < n; ++i) P(rb + i, cb + (n - 1 - i)) = sign;
    };
    place(B.phi1(), B.phi2(), 1.0);
    place(B.phi2(), B.phi1(), 1.0);
    place(B.psi1(), B.psi2(), -1.0);
    place(B.psi2(), B.psi1(), -1.0);
    place(B.ux(), B.ux(), 1.0);
    place(B.uy(), B.uy(), -1.0);

    for (const Eigen::MatrixXcd* L : {&pep.l0, &pep.l1, &pep.l2}) {
      const double scale = std::max(1.0, L->cwiseAbs().maxCoeff());
      const double dev = (P * (*L) * P - (*L)).cwiseAbs().maxCoeff();
      CHECK(dev / scale < 1e-12);
    }
  }
}

TEST_CASE("row equilibration leaves the eigenvalues unchanged") {
  const TriLayerSystem sys = paper_system();
  const auto cases = enumerate_cases(sys);
  const ReferenceGrid ref = reference_grid(8);
  const CaseGrids grids = make_case_grids(sys, cases[0], ref);
  PEPMatrices plain = assemble_pep(sys, 2.0 * kPi * 1.0, cases[0], grids);
  PEPMatrices scaled = plain;
  equilibrate_rows(scaled);

  // Scaling really changed the rows.
  CHECK((plain.l0 - scaled.l0).cwiseAbs().maxCoeff() > 1.0);

  const auto ev_plain = solve_pep(plain);
  const auto ev_scaled = solve_pep(scaled);
  // Every well-conditioned eigenvalue of the scaled problem matches one of
  // the plain problem.
  int matched = 0;
  for (const EigenPair& es : ev_scaled) {
    if (std::abs(es.k_x) > 1e3) continue;  // near-infinite artifacts
    double best = 1e300;
    for (const EigenPair& ep : ev_plain) {
      best = std::min(best, std::abs(es.k_x - ep.k_x) / std::abs(es.k_x));
    }
    if (best < 1e-7) ++matched;
  }
  CHECK(matched > 20);
}

TEST_CASE("assembly rejects invalid input") {
  const TriLayerSystem sys = paper_system();
  const auto cases = enumerate_cases(sys);
  const ReferenceGrid small = reference_grid(4);
  const ReferenceGrid ok = reference_grid(8);
  CHECK_THROWS_AS(
      assemble_pep(sys, 1.0, cases[0], make_case_grids(sys, cases[0], small)),
      AssemblyError);
  CHECK_THROWS_AS(
      assemble_pep(sys, 0.0, cases[0], make_case_grids(sys, cases[0], ok)),
      AssemblyError);
  CaseGrids mixed = make_case_grids(sys, cases[0], ok);
  mixed.guide = map_guide(reference_grid(10), sys.half_thickness_d);
  CHECK_THROWS_AS(assemble_pep(sys, 1.0, cases[0], mixed), AssemblyError);
}

}  // TEST_SUITE
