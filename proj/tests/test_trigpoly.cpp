#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qland/trigpoly.hpp"

using namespace qland;
using std::numbers::pi;

namespace {

// quadrature oracle: k-th Fourier coefficient by fine trapezoid rule (n=1)
cplx fourier_quadrature(const std::function<cplx(double)>& f, int k, int n = 20000) {
  cplx acc(0.0);
  for (int j = 0; j < n; ++j) {
    double th = 2.0 * pi * j / n;
    acc += f(th) * std::exp(cplx(0.0, -k * th));
  }
  return acc / static_cast<double>(n);
}

TrigPoly random_poly(std::mt19937_64& rng, int K, bool real_valued) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  TrigPoly p(1, 1.0);
  for (int k = 1; k <= K; ++k) {
    cplx c(unif(rng), unif(rng));
    p.add_coeff({k}, c);
    p.add_coeff({-k}, real_valued ? std::conj(c) : cplx(unif(rng), unif(rng)));
  }
  p.add_coeff({0}, cplx(unif(rng), real_valued ? 0.0 : unif(rng)));
  return p;
}

}  // namespace

TEST_CASE("analyze: zero function") {
  auto p = TrigPoly::analyze([](const std::vector<double>&) { return cplx(0.0); }, 1, 17, 8);
  CHECK(p.empty());
}

TEST_CASE("analyze: sin theta") {
  auto p = TrigPoly::analyze(
      [](const std::vector<double>& th) { return cplx(std::sin(th[0]), 0.0); }, 1, 9, 4);
  CHECK(std::abs(p.coeff({1}) - cplx(0.0, -0.5)) < 1e-14);
  CHECK(std::abs(p.coeff({-1}) - cplx(0.0, 0.5)) < 1e-14);
  CHECK(std::abs(p.coeff({2})) < 1e-14);
  CHECK(std::abs(p.coeff({0})) < 1e-14);
  CHECK(p.is_real_valued());
}

TEST_CASE("analyze: sin^2 theta against quadrature oracle") {
  auto f = [](double th) { return cplx(std::sin(th) * std::sin(th), 0.0); };
  auto p = TrigPoly::analyze(
      [&](const std::vector<double>& th) { return f(th[0]); }, 1, 11, 4);
  CHECK(std::abs(p.coeff({0}) - cplx(0.5, 0.0)) < 1e-14);
  CHECK(std::abs(p.coeff({2}) - cplx(-0.25, 0.0)) < 1e-14);
  CHECK(std::abs(p.coeff({-2}) - cplx(-0.25, 0.0)) < 1e-14);
  for (int k : {-2, -1, 0, 1, 2})
    CHECK(std::abs(p.coeff({k}) - fourier_quadrature(f, k)) < 1e-12);
}

TEST_CASE("analyze: grid too coarse is rejected") {
  std::vector<cplx> samples(8, cplx(0.0));
  CHECK_THROWS_AS(TrigPoly::analyze(samples, 1, 8, 4), std::invalid_argument);
}

TEST_CASE("analyze: 2-torus product mode") {
  auto p = TrigPoly::analyze(
      [](const std::vector<double>& th) {
        return std::exp(cplx(0.0, th[0] - 2.0 * th[1]));
      },
      2, 9, 4);
  CHECK(std::abs(p.coeff({1, -2}) - cplx(1.0, 0.0)) < 1e-13);
  CHECK(p.term_count() == 1);
}

TEST_CASE("evaluate: constants and sin") {
  auto c2 = TrigPoly::constant(1, cplx(2.0, 0.0));
  CHECK(std::abs(c2.evaluate(0.731) - cplx(2.0, 0.0)) < 1e-15);
  auto s = TrigPoly::sin1();
  CHECK(std::abs(s.evaluate(pi / 2.0) - cplx(1.0, 0.0)) < 1e-14);
  // analytic continuation: sin(0.3i) = i sinh(0.3)
  cplx v = s.evaluate(cplx(0.0, 0.3));
  CHECK(std::abs(v - cplx(0.0, std::sinh(0.3))) < 1e-14);
}

TEST_CASE("evaluate: outside strip is rejected") {
  auto s = TrigPoly::sin1(0.5);
  CHECK_THROWS_AS(s.evaluate(cplx(0.0, 0.7)), std::domain_error);
}

TEST_CASE("strip_norm: zero, coefficient sum, majorant") {
  TrigPoly z(1);
  CHECK(z.strip_norm(0.5) == 0.0);
  auto s = TrigPoly::sin1();
  CHECK(std::abs(s.strip_norm(0.0) - 1.0) < 1e-15);
  // weighted-l1 majorant: |c_1|e^sigma + |c_-1|e^sigma = e^sigma for sin
  CHECK(std::abs(s.strip_norm(1.0) - std::exp(1.0)) < 1e-12);
  // dominates the true sup on the strip, sup |sin(x+iy)| = cosh(sigma)
  CHECK(s.strip_norm(1.0) >= std::cosh(1.0));
  CHECK(std::abs(std::cosh(1.0) - 1.5430806348152437) < 1e-12);
  // edge-sampled sup never exceeds the majorant
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  TrigPoly p(1, 1.0);
  for (int k = -4; k <= 4; ++k) p.add_coeff({k}, cplx(unif(rng), unif(rng)));
  double sup = 0.0;
  for (int j = 0; j < 512; ++j) {
    double x = 2.0 * pi * j / 512;
    sup = std::max(sup, std::abs(p.evaluate(cplx(x, 0.8))));
    sup = std::max(sup, std::abs(p.evaluate(cplx(x, -0.8))));
  }
  CHECK(sup <= p.strip_norm(0.8) * (1.0 + 1e-12));
}

TEST_CASE("product: annihilator, double-angle, product identity") {
  auto s = TrigPoly::sin1();
  TrigPoly z(1);
  CHECK((s * z).empty());

  auto s2 = s * s;  // 1/2 - 1/2 cos 2theta
  CHECK(std::abs(s2.coeff({0}) - cplx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(s2.coeff({2}) - cplx(-0.25, 0.0)) < 1e-15);
  CHECK(std::abs(s2.coeff({-2}) - cplx(-0.25, 0.0)) < 1e-15);
  CHECK(std::abs(s2.coeff({1})) < 1e-15);

  auto sc = s * TrigPoly::cos1();  // 1/2 sin 2theta
  CHECK(std::abs(sc.coeff({2}) - cplx(0.0, -0.25)) < 1e-15);
  CHECK(std::abs(sc.coeff({-2}) - cplx(0.0, 0.25)) < 1e-15);
}

TEST_CASE("truncate: exact splits") {
  auto s3 = TrigPoly::mode({3}, cplx(0.0, -0.5)) + TrigPoly::mode({-3}, cplx(0.0, 0.5));
  auto [low0, tail0] = s3.truncate(5);
  CHECK(tail0.empty());
  auto [low1, tail1] = s3.truncate(2);
  CHECK(low1.empty());
  CHECK(max_coeff_distance(tail1, s3) == 0.0);

  auto s = TrigPoly::sin1();
  auto p = s * s;  // 1/2 - 1/2 cos 2theta
  auto [low, tail] = p.truncate(1);
  CHECK(std::abs(low.coeff({0}) - cplx(0.5, 0.0)) < 1e-15);
  CHECK(low.term_count() == 1);
  CHECK(std::abs(tail.coeff({2}) - cplx(-0.25, 0.0)) < 1e-15);
  CHECK(max_coeff_distance(low + tail, p) == 0.0);
}

TEST_CASE("property: Parseval") {
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 5; ++rep) {
    auto p = random_poly(rng, 6, rep % 2 == 0);
    double mass = p.l2_mass();
    const int n = 4096;
    double grid = 0.0;
    for (int j = 0; j < n; ++j)
      grid += std::norm(p.evaluate(2.0 * pi * j / n));
    grid /= n;
    CHECK(std::abs(mass - grid) < 1e-12 * std::max(1.0, mass));
  }
}

TEST_CASE("property: strip norm submultiplicative") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    auto p = random_poly(rng, 5, false);
    auto q = random_poly(rng, 5, false);
    for (double sg : {0.0, 0.3, 1.0})
      CHECK((p * q).strip_norm(sg) <= p.strip_norm(sg) * q.strip_norm(sg) * (1.0 + 1e-12));
  }
}

TEST_CASE("property: analyze(evaluate) is the identity on its own grid") {
  std::mt19937_64 rng(11);
  auto p = random_poly(rng, 7, true);
  const int G = 2 * 7 + 1;
  std::vector<cplx> samples;
  for (int j = 0; j < G; ++j) samples.push_back(p.evaluate(2.0 * pi * j / G));
  auto q = TrigPoly::analyze(samples, 1, G, 7);
  CHECK(max_coeff_distance(p, q) < 1e-13);
}

TEST_CASE("property: tail decay matches the smoothing-estimate shape") {
  // entire function exp(sin theta): coefficients decay superexponentially
  auto p = TrigPoly::analyze(
      [](const std::vector<double>& th) { return cplx(std::exp(std::sin(th[0])), 0.0); },
      1, 64, 20, 2.0);
  const double sigma = 2.0;
  for (int K : {2, 4, 6, 8}) {
    auto [low, tail] = p.truncate(K);
    CHECK(tail.strip_norm(sigma / 2.0) <=
          std::exp(-K * sigma / 2.0) * p.strip_norm(sigma) * (1.0 + 1e-12));
  }
  // trig polynomials have empty tails beyond their cutoff
  auto s = TrigPoly::sin1();
  auto [l, t] = s.truncate(1);
  CHECK(t.empty());
}

TEST_CASE("derivative and directional derivative") {
  auto s = TrigPoly::sin1();
  auto d = s.derivative(0);  // cos
  CHECK(std::abs(d.coeff({1}) - cplx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(d.coeff({-1}) - cplx(0.5, 0.0)) < 1e-15);
  std::vector<double> om{2.4};
  auto g = s.directional_derivative(om);
  CHECK(std::abs(g.evaluate(0.2) - 2.4 * std::cos(0.2)) < 1e-14);
}

TEST_CASE("conjugate poly") {
  auto p = TrigPoly::mode({1}, cplx(0.3, 0.4));
  auto c = p.conjugate();
  double th = 0.77;
  CHECK(std::abs(c.evaluate(th) - std::conj(p.evaluate(th))) < 1e-15);
}
