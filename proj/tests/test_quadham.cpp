#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qland/charts.hpp"
#include "qland/quadham.hpp"

using namespace qland;

namespace {

TrigPoly random_tp(std::mt19937_64& rng, int K) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  TrigPoly p(1, 1.0);
  for (int k = -K; k <= K; ++k) p.add_coeff({k}, cplx(unif(rng), unif(rng)));
  return p;
}

QuadHamiltonian random_quad(std::mt19937_64& rng, bool landau_only) {
  QuadHamiltonian q(landau_only ? HamClass::landau : HamClass::full, 1, 1.0);
  for (const auto& m : all_monomials(landau_only)) q.set_term(m, random_tp(rng, 2));
  return q;
}

double ham_distance(const QuadHamiltonian& a, const QuadHamiltonian& b) {
  double worst = 0.0;
  for (const auto& m : all_monomials(false))
    worst = std::max(worst, max_coeff_distance(a.term(m), b.term(m)));
  return worst;
}

}  // namespace

TEST_CASE("bracket: antisymmetry, bilinearity, Jacobi") {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 8; ++rep) {
    auto F = random_quad(rng, false);
    auto G = random_quad(rng, false);
    auto H = random_quad(rng, false);

    CHECK(ham_distance(poisson_bracket(F, G), -1.0 * poisson_bracket(G, F)) < 1e-11);

    auto lhs = poisson_bracket(F + G, H);
    auto rhs = poisson_bracket(F, H) + poisson_bracket(G, H);
    CHECK(ham_distance(lhs, rhs) < 1e-11);

    auto jac = poisson_bracket(poisson_bracket(F, G), H) +
               poisson_bracket(poisson_bracket(G, H), F) +
               poisson_bracket(poisson_bracket(H, F), G);
    CHECK(jac.norm(0.0) < 1e-11);

    CHECK(poisson_bracket(F, F).norm(0.0) < 1e-12);
  }
}

TEST_CASE("bracket: {xi1 eta1, xi1^2} = -2i xi1^2") {
  QuadHamiltonian F(HamClass::landau, 1), G(HamClass::landau, 1);
  F.set_term(mon_xi1eta1(), TrigPoly::constant(1, 1.0));
  G.set_term(mon_xi1xi1(), TrigPoly::constant(1, 1.0));
  auto B = poisson_bracket(F, G);
  CHECK(std::abs(B.term(mon_xi1xi1()).coeff({0}) - cplx(0.0, -2.0)) < 1e-14);
  CHECK(B.terms().size() == 1);
}

TEST_CASE("bracket: Landau-class closure against normal forms") {
  std::mt19937_64 rng(5);
  NormalForm n{NormalForm::Kind::landau, 2.0, 0.31};
  for (int rep = 0; rep < 6; ++rep) {
    auto F = random_quad(rng, true);
    auto B = poisson_bracket(F, normal_form_ham(n, 1, 1.0));
    for (const auto& [m, p] : B.terms()) CHECK(m.landau_class());
    CHECK(B.class_tag() == HamClass::landau);
  }
}

TEST_CASE("bracket: {xi2^2, q} vanishes for every Landau-class q") {
  std::mt19937_64 rng(17);
  QuadHamiltonian x22(HamClass::landau, 1);
  x22.set_term(mon_xi2xi2(), TrigPoly::constant(1, 1.0));
  for (int rep = 0; rep < 6; ++rep) {
    auto q = random_quad(rng, true);
    CHECK(poisson_bracket(x22, q).norm(0.0) < 1e-14);
  }
}

TEST_CASE("charts: symplectic and round trip") {
  for (double B0 : {0.7, 1.0, 2.5}) {
    for (auto g : {Gauge::landau, Gauge::symmetric}) {
      Mat4c T = chart_matrix(g, B0);
      // i dz^dzbar pulls back to dQ^dP: T' Jc T == Jr
      Mat4c pb = T.transpose() * complex_J() * T;
      CHECK((pb - real_J().cast<cplx>()).cwiseAbs().maxCoeff() < 1e-13);
      Vec4 u(0.3, -1.2, 0.5, 0.9);
      Vec4c z = T * u.cast<cplx>();
      CHECK(std::abs(z(2) - std::conj(z(0))) < 1e-14);
      Vec4c back = T.inverse() * z;
      CHECK((back - u.cast<cplx>()).cwiseAbs().maxCoeff() < 1e-13);
      // and the inverse direction: T^-T Jr T^-1 == Jc
      Mat4c lhs = T.inverse().transpose() * real_J().cast<cplx>() * T.inverse();
      CHECK((lhs - complex_J()).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
  // ambio is canonical for the complex form
  Mat4c C = ambio_matrix();
  CHECK(symplectic_defect_complex(C) < 1e-15);
}

TEST_CASE("charts: coord values") {
  Mat4c T = landau_chart(1.0);
  Vec4 origin = Vec4::Zero();
  CHECK((T * origin.cast<cplx>()).cwiseAbs().maxCoeff() == 0.0);
  Vec4 u(0.0, 1.0, 0.0, 0.0);
  Vec4c z = T * u.cast<cplx>();
  CHECK(std::abs(z(0) - cplx(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);
  CHECK(std::abs(z(1)) < 1e-15);
}

TEST_CASE("build_landau: base case and coefficients") {
  auto f = TrigPoly::sin1();
  auto b0 = build_landau(1.0, f, 0.0);
  CHECK(b0.q.empty());
  CHECK(b0.base.a == doctest::Approx(2.0));
  CHECK(b0.base.c == 0.0);

  double eps = 0.25;
  auto b = build_landau(1.0, f, eps);
  CHECK(b.q.class_tag() == HamClass::landau);
  // xi1^2 coefficient is eps*f + (eps^2/2B0) f^2
  auto want = f * cplx(eps, 0.0) + (f * f) * cplx(eps * eps / 2.0, 0.0);
  CHECK(max_coeff_distance(b.q.term(mon_xi1xi1()), want) < 1e-14);
  // xi2^2 coefficient is -(eps^2/2B0) f^2
  auto want22 = (f * f) * cplx(-eps * eps / 2.0, 0.0);
  CHECK(max_coeff_distance(b.q.term(mon_xi2xi2()), want22) < 1e-14);
  CHECK(reality_check(b.q).real);
}

TEST_CASE("build_symmetric: coefficients") {
  auto f = TrigPoly::sin1();
  double eps = 0.1, B0 = 1.0;
  auto b = build_symmetric(B0, f, eps);
  CHECK(b.q.class_tag() == HamClass::full);
  CHECK(max_coeff_distance(b.q.term(mon_xi1xi2()),
                           f * cplx(-eps, 0.0) + (f * f) * cplx(-eps * eps / (2.0 * B0), 0.0)) <
        1e-14);
  CHECK(max_coeff_distance(b.q.term(mon_xi2eta2()),
                           (f * f) * cplx(eps * eps / (2.0 * B0), 0.0)) < 1e-14);
  CHECK(reality_check(b.q).real);
  CHECK(build_symmetric(B0, f, 0.0).q.empty());
}

TEST_CASE("build: rejects bad inputs") {
  auto f = TrigPoly::sin1();
  CHECK_THROWS_AS(build_landau(-1.0, f, 0.1), std::invalid_argument);
  auto g = f + TrigPoly::constant(1, cplx(0.5, 0.0));
  CHECK_THROWS_AS(build_landau(1.0, g, 0.1), std::invalid_argument);
}

TEST_CASE("build: even/odd split in eps") {
  auto f = TrigPoly::sin1();
  double eps = 0.2;
  auto qp = build_landau(1.0, f, eps).q;
  auto qm = build_landau(1.0, f, -eps).q;
  auto odd = (qp - qm) * cplx(0.5, 0.0);
  auto even = (qp + qm) * cplx(0.5, 0.0);
  // odd part scales linearly, even part quadratically
  auto qp2 = build_landau(1.0, f, 2.0 * eps).q;
  auto qm2 = build_landau(1.0, f, -2.0 * eps).q;
  auto odd2 = (qp2 - qm2) * cplx(0.5, 0.0);
  auto even2 = (qp2 + qm2) * cplx(0.5, 0.0);
  CHECK(ham_distance(odd2, odd * cplx(2.0, 0.0)) < 1e-13);
  CHECK(ham_distance(even2, even * cplx(4.0, 0.0)) < 1e-13);
}

TEST_CASE("reality check: positive and negative cases") {
  QuadHamiltonian h0(HamClass::landau, 1);
  h0.set_term(mon_xi1eta1(), TrigPoly::constant(1, 2.0));
  CHECK(reality_check(h0).real);

  QuadHamiltonian bad(HamClass::landau, 1);
  bad.set_term(mon_xi1eta1(), TrigPoly::constant(1, cplx(0.0, 1.0)));
  auto rep = reality_check(bad);
  CHECK_FALSE(rep.real);
  CHECK(rep.max_violation > 0.01);
}

TEST_CASE("fields: gauge family") {
  GaugeSpec spec;
  spec.B0 = 1.5;
  spec.f = TrigPoly::sin1();
  spec.omega = {2.0};

  spec.eps = 0.0;
  spec.gauge = Gauge::landau;
  auto F0 = fields_from_potentials(spec, 0.4, {0.3, -0.7});
  CHECK(std::abs(std::abs(F0.B_signed) - 1.5) < 1e-14);
  CHECK(F0.E.norm() < 1e-14);

  spec.eps = 0.2;
  Eigen::Vector2d x(0.8, -0.55);
  double t = 0.9;
  auto FL = fields_from_potentials(spec, t, x);
  // B-as-curl is -B(t); E = (-B'(t) x2, 0)
  CHECK(FL.B_signed == doctest::Approx(-spec.B_of(t)).epsilon(1e-12));
  CHECK(FL.E(0) == doctest::Approx(-spec.Bdot_of(t) * x(1)).epsilon(1e-12));
  CHECK(FL.E(1) == 0.0);

  spec.gauge = Gauge::symmetric_scalar;
  auto FS = fields_from_potentials(spec, t, x);
  CHECK(std::abs(FS.B_signed - FL.B_signed) < 1e-13);
  CHECK((FS.E - FL.E).norm() < 1e-13);

  spec.gauge = Gauge::symmetric;
  auto FP = fields_from_potentials(spec, t, x);
  CHECK(std::abs(FP.B_signed - FL.B_signed) < 1e-13);  // same magnetic field
  CHECK((FP.E - FL.E).norm() > 1e-3);                  // different electric field
}

TEST_CASE("norm and evaluate consistency") {
  std::mt19937_64 rng(3);
  auto q = random_quad(rng, false);
  std::vector<double> th{0.3};
  std::array<cplx, 4> u{cplx(0.2, 0.1), cplx(-0.4, 0.3), cplx(0.5, -0.2), cplx(0.1, 0.6)};
  cplx direct(0.0);
  for (const auto& [m, p] : q.terms()) {
    cplx mono(1.0);
    std::array<int, 4> e{m.alpha[0], m.alpha[1], m.beta[0], m.beta[1]};
    for (int i = 0; i < 4; ++i)
      for (int c = 0; c < e[i]; ++c) mono *= u[i];
    direct += p.evaluate(0.3) * mono;
  }
  CHECK(std::abs(q.evaluate(th, std::span<const cplx>(u.data(), 4)) - direct) < 1e-13);
}
