#include "qland/quadham.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qland {

namespace {

Monomial make_mon(int a1, int a2, int b1, int b2) {
  Monomial m;
  m.alpha = {a1, a2};
  m.beta = {b1, b2};
  return m;
}

// exponents as a flat array over u = (xi1, xi2, eta1, eta2)
std::array<int, 4> exps(const Monomial& m) {
  return {m.alpha[0], m.alpha[1], m.beta[0], m.beta[1]};
}

Monomial from_exps(const std::array<int, 4>& e) {
  return make_mon(e[0], e[1], e[2], e[3]);
}

}  // namespace

std::string Monomial::str() const {
  static const char* names[4] = {"xi1", "xi2", "eta1", "eta2"};
  std::array<int, 4> e = {alpha[0], alpha[1], beta[0], beta[1]};
  std::string s;
  for (int i = 0; i < 4; ++i)
    for (int c = 0; c < e[i]; ++c) {
      if (!s.empty()) s += "*";
      s += names[i];
    }
  return s.empty() ? "1" : s;
}

Monomial mon_xi1xi1() { return make_mon(2, 0, 0, 0); }
Monomial mon_xi1xi2() { return make_mon(1, 1, 0, 0); }
Monomial mon_xi2xi2() { return make_mon(0, 2, 0, 0); }
Monomial mon_xi1eta1() { return make_mon(1, 0, 1, 0); }
Monomial mon_xi1eta2() { return make_mon(1, 0, 0, 1); }
Monomial mon_xi2eta1() { return make_mon(0, 1, 1, 0); }
Monomial mon_xi2eta2() { return make_mon(0, 1, 0, 1); }
Monomial mon_eta1eta1() { return make_mon(0, 0, 2, 0); }
Monomial mon_eta1eta2() { return make_mon(0, 0, 1, 1); }
Monomial mon_eta2eta2() { return make_mon(0, 0, 0, 2); }

std::vector<Monomial> all_monomials(bool landau_only) {
  std::vector<Monomial> out;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      std::array<int, 4> e{0, 0, 0, 0};
      e[i] += 1;
      e[j] += 1;
      Monomial m = from_exps(e);
      if (landau_only && !m.landau_class()) continue;
      out.push_back(m);
    }
  std::sort(out.begin(), out.end());
  return out;
}

QuadHamiltonian::QuadHamiltonian(HamClass tag, int dim, double strip_width)
    : class_tag_(tag), dim_(dim), strip_width_(strip_width) {}

TrigPoly QuadHamiltonian::term(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? TrigPoly(dim_, strip_width_) : it->second;
}

void QuadHamiltonian::set_term(const Monomial& m, const TrigPoly& p) {
  if (m.degree() != 2) throw std::invalid_argument("QuadHamiltonian: monomial degree != 2");
  if (class_tag_ == HamClass::landau && !m.landau_class())
    throw std::invalid_argument("QuadHamiltonian: eta2-dependent monomial in Landau class");
  if (p.empty())
    terms_.erase(m);
  else
    terms_[m] = p;
}

void QuadHamiltonian::add_term(const Monomial& m, const TrigPoly& p) {
  if (p.empty()) return;
  auto it = terms_.find(m);
  if (it == terms_.end())
    set_term(m, p);
  else {
    it->second += p;
    if (it->second.empty()) terms_.erase(it);
  }
}

double QuadHamiltonian::norm(double sigma) const {
  double worst = 0.0;
  for (const auto& [m, p] : terms_) worst = std::max(worst, p.strip_norm(sigma));
  return worst;
}

int QuadHamiltonian::max_mode() const {
  int c = 0;
  for (const auto& [m, p] : terms_) c = std::max(c, p.cutoff());
  return c;
}

cplx QuadHamiltonian::evaluate(std::span<const double> theta,
                               std::span<const cplx> state) const {
  if (state.size() != 4) throw std::invalid_argument("QuadHamiltonian::evaluate: need 4 state components");
  cplx acc(0.0);
  for (const auto& [m, p] : terms_) {
    auto e = exps(m);
    cplx v(1.0);
    for (int i = 0; i < 4; ++i)
      for (int c = 0; c < e[i]; ++c) v *= state[i];
    acc += p.evaluate(theta) * v;
  }
  return acc;
}

double QuadHamiltonian::drop_small_modes(double tol, double sigma) {
  double dropped = 0.0;
  for (auto it = terms_.begin(); it != terms_.end();) {
    dropped += it->second.drop_small_modes(tol, sigma);
    it = it->second.empty() ? terms_.erase(it) : std::next(it);
  }
  return dropped;
}

QuadHamiltonian& QuadHamiltonian::operator+=(const QuadHamiltonian& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("QuadHamiltonian: dim mismatch");
  if (o.class_tag_ != class_tag_) class_tag_ = HamClass::full;
  for (const auto& [m, p] : o.terms_) add_term(m, p);
  return *this;
}

QuadHamiltonian& QuadHamiltonian::operator-=(const QuadHamiltonian& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("QuadHamiltonian: dim mismatch");
  if (o.class_tag_ != class_tag_) class_tag_ = HamClass::full;
  for (const auto& [m, p] : o.terms_) add_term(m, -p);
  return *this;
}

QuadHamiltonian& QuadHamiltonian::operator*=(cplx s) {
  for (auto& [m, p] : terms_) p *= s;
  return *this;
}

QuadHamiltonian poisson_bracket(const QuadHamiltonian& F, const QuadHamiltonian& G) {
  if (F.dim() != G.dim()) throw std::invalid_argument("poisson_bracket: dim mismatch");
  HamClass tag = (F.class_tag() == HamClass::landau && G.class_tag() == HamClass::landau)
                     ? HamClass::landau
                     : HamClass::full;
  // {F,G} stays in the Landau class when both arguments are (the structural
  // closure the iteration relies on), except xi2^2 terms can pair eta2-ward;
  // recompute the tag from the result instead of trusting the inputs.
  QuadHamiltonian out(HamClass::full, F.dim(), std::min(F.strip_width(), G.strip_width()));
  for (const auto& [mf, pf] : F.terms()) {
    auto ef = exps(mf);
    for (const auto& [mg, pg] : G.terms()) {
      auto eg = exps(mg);
      // i * sum_j [ dF/dxi_j dG/deta_j - dG/dxi_j dF/deta_j ]
      for (int j = 0; j < 2; ++j) {
        int xi = j, eta = j + 2;
        if (ef[xi] > 0 && eg[eta] > 0) {
          auto e1 = ef, e2 = eg;
          double c = e1[xi] * e2[eta];
          e1[xi] -= 1;
          e2[eta] -= 1;
          std::array<int, 4> e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]};
          out.add_term(from_exps(e), (cplx(0.0, c)) * (pf * pg));
        }
        if (eg[xi] > 0 && ef[eta] > 0) {
          auto e1 = eg, e2 = ef;
          double c = e1[xi] * e2[eta];
          e1[xi] -= 1;
          e2[eta] -= 1;
          std::array<int, 4> e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]};
          out.add_term(from_exps(e), (cplx(0.0, -c)) * (pf * pg));
        }
      }
    }
  }
  if (tag == HamClass::landau) {
    bool ok = true;
    for (const auto& [m, p] : out.terms())
      if (!m.landau_class()) ok = false;
    if (ok) {
      QuadHamiltonian relabeled(HamClass::landau, out.dim(), out.strip_width());
      for (const auto& [m, p] : out.terms()) relabeled.set_term(m, p);
      return relabeled;
    }
  }
  return out;
}

QuadHamiltonian advect(const QuadHamiltonian& F, std::span<const double> omega) {
  QuadHamiltonian out(F.class_tag(), F.dim(), F.strip_width());
  for (const auto& [m, p] : F.terms()) out.set_term(m, p.directional_derivative(omega));
  return out;
}

QuadHamiltonian normal_form_ham(const NormalForm& n, int dim, double strip_width) {
  bool landau = (n.kind == NormalForm::Kind::landau);
  QuadHamiltonian h(landau ? HamClass::landau : HamClass::full, dim, strip_width);
  if (n.a != 0.0) h.set_term(mon_xi1eta1(), TrigPoly::constant(dim, n.a, strip_width));
  if (n.c != 0.0) {
    Monomial m2 = landau ? mon_xi2xi2() : mon_xi2eta2();
    h.set_term(m2, TrigPoly::constant(dim, n.c, strip_width));
  }
  return h;
}

QuadHamiltonian extended_bracket(const QuadHamiltonian& F, const NormalForm& base,
                                 std::span<const double> omega) {
  QuadHamiltonian out = poisson_bracket(F, normal_form_ham(base, F.dim(), F.strip_width()));
  out -= advect(F, omega);
  return out;
}

RealityReport reality_check(const QuadHamiltonian& F, double tol) {
  // deterministic sample of involution-fixed states
  std::mt19937_64 rng(0x51ab5eedULL);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  RealityReport rep;
  const int n_states = 24, n_theta = 16;
  std::vector<double> theta(F.dim());
  for (int s = 0; s < n_states; ++s) {
    std::array<cplx, 4> u;
    if (F.class_tag() == HamClass::landau) {
      // involution-fixed states in the xi2 -> xi2 - eta2 chart: eta1 = conj xi1,
      // xi2 = z2 - conj(z2) purely imaginary, eta2 = conj(z2)
      cplx xi1(unif(rng), unif(rng));
      cplx z2(unif(rng), unif(rng));
      u = {xi1, z2 - std::conj(z2), std::conj(xi1), std::conj(z2)};
    } else {
      cplx xi1(unif(rng), unif(rng)), xi2(unif(rng), unif(rng));
      u = {xi1, xi2, std::conj(xi1), std::conj(xi2)};
    }
    for (int t = 0; t < n_theta; ++t) {
      for (int d = 0; d < F.dim(); ++d)
        theta[d] = 2.0 * M_PI * ((t + 0.37 * d) / n_theta);
      cplx v = F.evaluate(theta, std::span<const cplx>(u.data(), 4));
      rep.max_violation = std::max(rep.max_violation, std::abs(v.imag()));
    }
  }
  rep.real = rep.max_violation <= tol * std::max(1.0, F.norm(0.0));
  return rep;
}

namespace {

void require_admissible(double B0, const TrigPoly& f) {
  if (B0 <= 0.0) throw std::invalid_argument("build: B0 must be positive");
  MultiIndex zero(f.dim(), 0);
  if (std::abs(f.coeff(zero)) > 1e-13 * std::max(1.0, f.strip_norm(0.0)))
    throw std::invalid_argument("build: f must have zero mean (fhat(0) = 0)");
}

}  // namespace

LandauBuild build_landau(double B0, const TrigPoly& f, double eps) {
  require_admissible(B0, f);
  const int dim = f.dim();
  const double sw = f.strip_width();
  LandauBuild out;
  out.B0 = B0;
  out.eps = eps;
  out.base = NormalForm{NormalForm::Kind::landau, 2.0 * B0, 0.0};
  QuadHamiltonian q(HamClass::landau, dim, sw);
  if (eps != 0.0) {
    // r1 = eps f(theta) (xi1+eta1)(xi1+eta1 - i xi2)    [xi2 := former xi2-eta2]
    TrigPoly ef = f * cplx(eps, 0.0);
    q.add_term(mon_xi1xi1(), ef);
    q.add_term(mon_eta1eta1(), ef);
    q.add_term(mon_xi1eta1(), ef * cplx(2.0, 0.0));
    q.add_term(mon_xi1xi2(), ef * cplx(0.0, -1.0));
    q.add_term(mon_xi2eta1(), ef * cplx(0.0, -1.0));
    // r2 = (eps^2/2B0) f^2 (xi1+eta1 - i xi2)^2
    TrigPoly e2f2 = (f * f) * cplx(eps * eps / (2.0 * B0), 0.0);
    q.add_term(mon_xi1xi1(), e2f2);
    q.add_term(mon_eta1eta1(), e2f2);
    q.add_term(mon_xi1eta1(), e2f2 * cplx(2.0, 0.0));
    q.add_term(mon_xi2xi2(), -e2f2);
    q.add_term(mon_xi1xi2(), e2f2 * cplx(0.0, -2.0));
    q.add_term(mon_xi2eta1(), e2f2 * cplx(0.0, -2.0));
  }
  out.q = q;
  return out;
}

LandauBuild build_symmetric(double B0, const TrigPoly& f, double eps) {
  require_admissible(B0, f);
  const int dim = f.dim();
  const double sw = f.strip_width();
  LandauBuild out;
  out.B0 = B0;
  out.eps = eps;
  out.base = NormalForm{NormalForm::Kind::symmetric, 2.0 * B0, 0.0};
  QuadHamiltonian q(HamClass::full, dim, sw);
  if (eps != 0.0) {
    // r1 = eps f (2 xi1 eta1 - xi1 xi2 - eta1 eta2)
    TrigPoly ef = f * cplx(eps, 0.0);
    q.add_term(mon_xi1eta1(), ef * cplx(2.0, 0.0));
    q.add_term(mon_xi1xi2(), -ef);
    q.add_term(mon_eta1eta2(), -ef);
    // r2 = (eps^2 f^2 / 2B0) (xi1 eta1 + xi2 eta2 - xi1 xi2 - eta1 eta2)
    TrigPoly e2f2 = (f * f) * cplx(eps * eps / (2.0 * B0), 0.0);
    q.add_term(mon_xi1eta1(), e2f2);
    q.add_term(mon_xi2eta2(), e2f2);
    q.add_term(mon_xi1xi2(), -e2f2);
    q.add_term(mon_eta1eta2(), -e2f2);
  }
  out.q = q;
  return out;
}

}  // namespace qland
