// Quadratic Hamiltonians in complex phase-space variables (xi1,xi2,eta1,eta2)
// with TrigPoly coefficients: gauges, Poisson brackets, reality.

#ifndef QLAND_QUADHAM_HPP
#define QLAND_QUADHAM_HPP

#include <array>
#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qland/trigpoly.hpp"

namespace qland {

/// Quadratic monomial xi^alpha eta^beta with |alpha|+|beta| = 2.
struct Monomial {
  std::array<int, 2> alpha{0, 0};
  std::array<int, 2> beta{0, 0};

  int degree() const { return alpha[0] + alpha[1] + beta[0] + beta[1]; }
  /// alpha_j - beta_j per variable pair, the divisor weights.
  int delta(int j) const { return alpha[j] - beta[j]; }
  bool landau_class() const { return beta[1] == 0; }

  auto operator<=>(const Monomial&) const = default;
  std::string str() const;
};

Monomial mon_xi1xi1();
Monomial mon_xi1xi2();
Monomial mon_xi2xi2();
Monomial mon_xi1eta1();
Monomial mon_xi1eta2();
Monomial mon_xi2eta1();
Monomial mon_xi2eta2();
Monomial mon_eta1eta1();
Monomial mon_eta1eta2();
Monomial mon_eta2eta2();

/// All 10 quadratic monomials (lexicographic in (alpha, beta)); the Landau
/// class keeps the 6 with beta_2 = 0.
std::vector<Monomial> all_monomials(bool landau_only = false);

enum class HamClass { landau, full };

/// Constant-coefficient resonant normal form.
/// kind landau:     a*xi1*eta1 + c*xi2^2      (post change-of-variables chart)
/// kind symmetric:  a*xi1*eta1 + c*xi2*eta2   (a = nu1, c = nu2)
struct NormalForm {
  enum class Kind { landau, symmetric };
  Kind kind = Kind::landau;
  double a = 0.0;
  double c = 0.0;

  double nu1() const { return a; }
  double nu2() const { return kind == Kind::symmetric ? c : 0.0; }
};

/// theta-dependent quadratic form  sum_{alpha,beta} q_{alpha,beta}(theta)
/// xi^alpha eta^beta.  class_tag landau enforces beta_2 = 0 (the chart in
/// which the perturbation is independent of eta_2).
class QuadHamiltonian {
 public:
  QuadHamiltonian() : class_tag_(HamClass::full), dim_(1), strip_width_(1.0) {}
  QuadHamiltonian(HamClass tag, int dim, double strip_width = 1.0);

  HamClass class_tag() const { return class_tag_; }
  int dim() const { return dim_; }
  double strip_width() const { return strip_width_; }
  const std::map<Monomial, TrigPoly>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  TrigPoly term(const Monomial& m) const;
  void set_term(const Monomial& m, const TrigPoly& p);
  void add_term(const Monomial& m, const TrigPoly& p);

  /// [q]_sigma: max over monomials of the coefficient strip norm.
  double norm(double sigma) const;
  int max_mode() const;

  /// Value at a phase point (theta real, state = (xi1,xi2,eta1,eta2)).
  cplx evaluate(std::span<const double> theta, std::span<const cplx> state) const;

  /// Remove modes contributing less than tol to norm(sigma); returns dropped mass.
  double drop_small_modes(double tol, double sigma);

  QuadHamiltonian& operator+=(const QuadHamiltonian& o);
  QuadHamiltonian& operator-=(const QuadHamiltonian& o);
  QuadHamiltonian& operator*=(cplx s);
  friend QuadHamiltonian operator+(QuadHamiltonian a, const QuadHamiltonian& b) { return a += b; }
  friend QuadHamiltonian operator-(QuadHamiltonian a, const QuadHamiltonian& b) { return a -= b; }
  friend QuadHamiltonian operator*(QuadHamiltonian a, cplx s) { return a *= s; }
  friend QuadHamiltonian operator*(cplx s, QuadHamiltonian a) { return a *= s; }

 private:
  HamClass class_tag_;
  int dim_;
  double strip_width_;
  std::map<Monomial, TrigPoly> terms_;
};

/// {F,G} = i sum_j (dF/dxi_j dG/deta_j - dG/dxi_j dF/deta_j); the (theta,I)
/// part vanishes between stored quadratics (neither depends on I).
QuadHamiltonian poisson_bracket(const QuadHamiltonian& F, const QuadHamiltonian& G);

/// omega . dF/dtheta applied coefficientwise.
QuadHamiltonian advect(const QuadHamiltonian& F, std::span<const double> omega);

QuadHamiltonian normal_form_ham(const NormalForm& n, int dim, double strip_width);

/// {F, omega.I + N} in the extended phase space: {F, N} - omega.dF/dtheta.
/// (The advection sign follows Idot = -dh/dtheta; see README on conventions.)
QuadHamiltonian extended_bracket(const QuadHamiltonian& F, const NormalForm& base,
                                 std::span<const double> omega);

struct RealityReport {
  bool real = false;
  double max_violation = 0.0;
};

/// True iff F takes real values on involution-fixed states, sampled on a
/// deterministic set of real states and a theta grid.
RealityReport reality_check(const QuadHamiltonian& F, double tol = 1e-10);

struct LandauBuild {
  QuadHamiltonian q;   // perturbation r1 + r2, Landau class
  NormalForm base;     // (2 B0) xi1 eta1
  double B0 = 0.0;
  double eps = 0.0;
};

/// Modulated Landau-gauge Hamiltonian in the complex chart (after the
/// xi2 -> xi2 - eta2 change of variables, so q is independent of eta2).
/// Requires fhat(0) = 0 and B0 > 0.
LandauBuild build_landau(double B0, const TrigPoly& f, double eps);

/// Symmetric-gauge analogue; full class, base (2 B0, 0).
LandauBuild build_symmetric(double B0, const TrigPoly& f, double eps);

}  // namespace qland

#endif
