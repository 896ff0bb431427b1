#include "qland/constants.hpp"

#include <cmath>
#include <numbers>

namespace qland {

namespace {

double omega_dot(std::span<const double> omega, const MultiIndex& k) {
  double s = 0.0;
  for (std::size_t i = 0; i < omega.size(); ++i) s += omega[i] * k[i];
  return s;
}

void check_dims(const TrigPoly& f, std::span<const double> omega, double B0) {
  if (static_cast<int>(omega.size()) != f.dim())
    throw std::invalid_argument("constants: omega dimension mismatch");
  if (B0 <= 0.0) throw std::invalid_argument("constants: B0 must be positive");
}

// normalized mean of g(theta)^2 over T^n by trapezoid sampling
cplx mean_square(const TrigPoly& g) {
  const int n = g.dim();
  const int G = std::max(64, 4 * g.cutoff() + 5);
  std::size_t total = 1;
  for (int d = 0; d < n; ++d) total *= static_cast<std::size_t>(G);
  std::vector<std::size_t> stride(n, 1);
  for (int d = n - 2; d >= 0; --d) stride[d] = stride[d + 1] * G;
  std::vector<double> th(n);
  cplx acc(0.0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int d = 0; d < n; ++d) {
      std::size_t id = rem / stride[d];
      rem %= stride[d];
      th[d] = 2.0 * std::numbers::pi * static_cast<double>(id) / G;
    }
    cplx v = g.evaluate(std::span<const double>(th));
    acc += v * v;
  }
  return acc / static_cast<double>(total);
}

double closed_pair_sum(const TrigPoly& f, std::span<const double> omega,
                       double scale, double pole_sq, const char* where) {
  // scale * sum_{k != 0} fhat(k) fhat(-k) (omega.k)^2 / ((omega.k)^2 - pole_sq)
  cplx acc(0.0);
  for (const auto& [k, fk] : f.coeffs()) {
    if (l1_norm(k) == 0) continue;
    MultiIndex mk(k);
    for (int& x : mk) x = -x;
    cplx fmk = f.coeff(mk);
    double wk = omega_dot(omega, k);
    double denom = wk * wk - pole_sq;
    check_divisor(denom, k, where);
    acc += fk * fmk * (wk * wk / denom);
  }
  double val = scale * acc.real();
  if (std::abs(acc.imag()) > 1e-12 * (1.0 + std::abs(acc.real())))
    throw std::runtime_error(std::string(where) + ": sum has non-negligible imaginary part");
  return val;
}

}  // namespace

void check_divisor(double value, const MultiIndex& k, const char* where) {
  if (std::abs(value) < kResonanceFloor * (1.0 + l1_norm(k))) {
    std::string msg = std::string(where) + ": resonant divisor at k = (";
    for (std::size_t i = 0; i < k.size(); ++i)
      msg += (i ? "," : "") + std::to_string(k[i]);
    msg += ")";
    throw resonance_error(msg, k, std::abs(value));
  }
}

TrigPoly g_omega(const TrigPoly& f, std::span<const double> omega, double B0) {
  check_dims(f, omega, B0);
  TrigPoly g(f.dim(), f.strip_width());
  const double s = std::sqrt(2.0 * B0);
  for (const auto& [k, fk] : f.coeffs()) {
    if (l1_norm(k) == 0) continue;
    double wk = omega_dot(omega, k);
    double denom = wk + 2.0 * B0;
    check_divisor(denom, k, "g_omega");
    g.set_coeff(k, -(wk / denom) * fk / s);
  }
  return g;
}

double c_omega(const TrigPoly& f, std::span<const double> omega, double B0) {
  check_dims(f, omega, B0);
  double closed =
      closed_pair_sum(f, omega, -1.0 / (2.0 * B0), 4.0 * B0 * B0, "c_omega");
  cplx quad = mean_square(g_omega(f, omega, B0));
  // c_omega = -<g_omega^2>
  double integral = -quad.real();
  double scale = std::max(1.0, std::abs(closed));
  if (std::abs(quad.imag()) > 1e-10 * scale ||
      std::abs(integral - closed) > 1e-10 * scale)
    throw std::runtime_error("c_omega: closed form and quadrature disagree");
  return closed;
}

double d_omega(const TrigPoly& f, std::span<const double> omega, double B0) {
  check_dims(f, omega, B0);
  double closed =
      closed_pair_sum(f, omega, 1.0 / (2.0 * B0), 4.0 * B0 * B0, "d_omega");
  cplx quad = mean_square(g_omega(f, omega, B0));
  // d_omega = +<g_omega^2>; the mean of a complex-valued square is real
  // for real f (asserted here)
  double integral = quad.real();
  double scale = std::max(1.0, std::abs(closed));
  if (std::abs(quad.imag()) > 1e-10 * scale ||
      std::abs(integral - closed) > 1e-10 * scale)
    throw std::runtime_error("d_omega: closed form and quadrature disagree");
  return closed;
}

double a_omega(const TrigPoly& f, std::span<const double> omega, double B0) {
  check_dims(f, omega, B0);
  return closed_pair_sum(f, omega, 1.0 / B0, 16.0 * B0 * B0, "a_omega");
}

StepConstants step_constants(const TrigPoly& f, std::span<const double> omega, double B0) {
  StepConstants out;
  out.omega_scalar = omega.empty() ? 0.0 : omega[0];
  out.B0 = B0;
  try {
    out.c = c_omega(f, omega, B0);
    out.d = d_omega(f, omega, B0);
    out.a = a_omega(f, omega, B0);
  } catch (const resonance_error&) {
    out.resonant = true;
  }
  return out;
}

namespace {

// chi-hat = i qhat / (nu1 (a1-b1) + nu2 (a2-b2) - omega.k): the generator of
// the time-dependent conjugation that cancels the given first-order term.
void add_solved_term(QuadHamiltonian& chi, const Monomial& m, const TrigPoly& coeff,
                     std::span<const double> omega, double nu1, const char* where) {
  TrigPoly out(coeff.dim(), coeff.strip_width());
  for (const auto& [k, v] : coeff.coeffs()) {
    double D = nu1 * m.delta(0) - omega_dot(omega, k);
    check_divisor(D, k, where);
    out.set_coeff(k, cplx(0.0, 1.0) * v / D);
  }
  chi.add_term(m, out);
}

}  // namespace

QuadHamiltonian chi1_landau(const TrigPoly& f, std::span<const double> omega,
                            double B0, double eps) {
  check_dims(f, omega, B0);
  MultiIndex zero(f.dim(), 0);
  if (std::abs(f.coeff(zero)) > 1e-13 * std::max(1.0, f.strip_norm(0.0)))
    throw std::invalid_argument("chi1_landau: f must have zero mean");
  QuadHamiltonian chi(HamClass::landau, f.dim(), f.strip_width());
  TrigPoly ef = f * cplx(eps, 0.0);
  const double nu1 = 2.0 * B0;
  add_solved_term(chi, mon_xi1xi1(), ef, omega, nu1, "chi1_landau");
  add_solved_term(chi, mon_eta1eta1(), ef, omega, nu1, "chi1_landau");
  add_solved_term(chi, mon_xi1eta1(), ef * cplx(2.0, 0.0), omega, nu1, "chi1_landau");
  add_solved_term(chi, mon_xi1xi2(), ef * cplx(0.0, -1.0), omega, nu1, "chi1_landau");
  add_solved_term(chi, mon_xi2eta1(), ef * cplx(0.0, -1.0), omega, nu1, "chi1_landau");
  return chi;
}

QuadHamiltonian chi1_symmetric(const TrigPoly& f, std::span<const double> omega,
                               double B0, double eps) {
  check_dims(f, omega, B0);
  QuadHamiltonian chi(HamClass::full, f.dim(), f.strip_width());
  TrigPoly ef = f * cplx(eps, 0.0);
  const double nu1 = 2.0 * B0;
  add_solved_term(chi, mon_xi1eta1(), ef * cplx(2.0, 0.0), omega, nu1, "chi1_symmetric");
  add_solved_term(chi, mon_xi1xi2(), -ef, omega, nu1, "chi1_symmetric");
  add_solved_term(chi, mon_eta1eta2(), -ef, omega, nu1, "chi1_symmetric");
  return chi;
}

}  // namespace qland
