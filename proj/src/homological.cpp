#include "qland/homological.hpp"

#include <cmath>
#include <functional>

namespace qland {

namespace {

double omega_dot(std::span<const double> omega, const MultiIndex& k) {
  double s = 0.0;
  for (std::size_t i = 0; i < omega.size(); ++i) s += omega[i] * k[i];
  return s;
}

void enumerate_modes(int dim, int K, const std::function<void(const MultiIndex&)>& fn) {
  MultiIndex k(dim, 0);
  std::function<void(int, int)> rec = [&](int axis, int budget) {
    if (axis == dim) {
      fn(k);
      return;
    }
    for (int v = -budget; v <= budget; ++v) {
      k[axis] = v;
      rec(axis + 1, budget - std::abs(v));
    }
  };
  rec(0, K);
}

bool pure_nu2_pair(const NormalForm& base, const Monomial& m, const MultiIndex& k) {
  return base.kind == NormalForm::Kind::symmetric && m.delta(0) == 0 &&
         m.delta(1) != 0 && l1_norm(k) == 0;
}

}  // namespace

DiophantineReport diophantine_check(std::span<const double> omega, double B0,
                                    const DiophantineParams& params, int K_max) {
  DiophantineReport rep;
  rep.ok = true;
  rep.worst_ratio = std::numeric_limits<double>::infinity();
  const int dim = static_cast<int>(omega.size());
  enumerate_modes(dim, K_max, [&](const MultiIndex& k) {
    int l1 = l1_norm(k);
    double wk = omega_dot(omega, k);
    // |omega.k + 2B0| >= gamma/(1+|k|^tau), all k
    {
      double thr = params.gamma / (1.0 + std::pow(static_cast<double>(l1), params.tau));
      double ratio = std::abs(wk + 2.0 * B0) / thr;
      if (ratio < rep.worst_ratio) {
        rep.worst_ratio = ratio;
        rep.worst_k = k;
        rep.worst_condition = 1;
      }
      if (ratio < 1.0) rep.ok = false;
    }
    // |omega.k| >= gamma/|k|^tau, k != 0
    if (l1 > 0) {
      double thr = params.gamma / std::pow(static_cast<double>(l1), params.tau);
      double ratio = std::abs(wk) / thr;
      if (ratio < rep.worst_ratio) {
        rep.worst_ratio = ratio;
        rep.worst_k = k;
        rep.worst_condition = 2;
      }
      if (ratio < 1.0) rep.ok = false;
    }
  });
  return rep;
}

double divisor_of(const NormalForm& base, const Monomial& m,
                  std::span<const double> omega, const MultiIndex& k) {
  return base.nu1() * m.delta(0) + base.nu2() * m.delta(1) - omega_dot(omega, k);
}

bool is_kernel_pair(const NormalForm& base, const Monomial& m, const MultiIndex& k) {
  if (l1_norm(k) != 0) return false;
  if (m == mon_xi1eta1()) return true;
  if (base.kind == NormalForm::Kind::landau) return m == mon_xi2xi2();
  return m == mon_xi2eta2();
}

DivisorReport small_divisors(const NormalForm& base, std::span<const double> omega, int K) {
  DivisorReport rep;
  rep.min_modulus = std::numeric_limits<double>::infinity();
  bool landau = base.kind == NormalForm::Kind::landau;
  const int dim = static_cast<int>(omega.size());
  for (const auto& m : all_monomials(landau)) {
    enumerate_modes(dim, K, [&](const MultiIndex& k) {
      if (is_kernel_pair(base, m, k)) return;
      DivisorEntry e;
      e.mon = m;
      e.k = k;
      e.divisor = divisor_of(base, m, omega, k);
      e.modulus = std::abs(e.divisor);
      if (e.modulus < rep.min_modulus) {
        rep.min_modulus = e.modulus;
        rep.worst = e;
      }
      rep.entries.push_back(std::move(e));
    });
  }
  return rep;
}

HomologicalSolution solve_homological(const NormalForm& base, std::span<const double> omega,
                                      const QuadHamiltonian& q, double kappa, int K,
                                      const SolveOptions& opts) {
  bool landau = base.kind == NormalForm::Kind::landau;
  if (landau && q.class_tag() != HamClass::landau)
    throw std::invalid_argument("solve_homological: Landau base needs Landau-class q");

  const int dim = q.dim();
  HomologicalSolution sol;
  sol.chi = QuadHamiltonian(q.class_tag(), dim, q.strip_width());
  sol.r = QuadHamiltonian(q.class_tag(), dim, q.strip_width());
  sol.kind = base.kind;
  sol.min_divisor = std::numeric_limits<double>::infinity();

  auto threshold_for = [&](const Monomial& m, const MultiIndex& k) {
    if (opts.nu2_eps > 0.0 && pure_nu2_pair(base, m, k))
      return std::min(0.5 * opts.nu2_eps * opts.nu2_eps, kappa);
    return kappa;
  };

  auto check_pair = [&](const Monomial& m, const MultiIndex& k, bool needed) {
    double D = divisor_of(base, m, omega, k);
    double mod = std::abs(D);
    // pure-nu2 pairs only gate the solve when the monomial actually occurs
    if (!needed && pure_nu2_pair(base, m, k)) return D;
    sol.min_divisor = std::min(sol.min_divisor, mod);
    double thr = std::max(threshold_for(m, k), kResonanceFloor * (1.0 + l1_norm(k)));
    if (mod < thr)
      throw resonance_error("solve_homological: divisor below threshold for " + m.str(),
                            k, m, mod);
    return D;
  };

  if (opts.check_all_pairs) {
    for (const auto& m : all_monomials(landau)) {
      const TrigPoly tp = q.term(m);
      enumerate_modes(dim, K, [&](const MultiIndex& k) {
        if (is_kernel_pair(base, m, k)) return;
        bool needed = tp.coeff(k) != cplx(0.0);
        check_pair(m, k, needed);
      });
    }
  }

  for (const auto& [m, p] : q.terms()) {
    TrigPoly chi_m(dim, q.strip_width());
    TrigPoly r_m(dim, q.strip_width());
    for (const auto& [k, v] : p.coeffs()) {
      if (l1_norm(k) > K) {
        r_m.set_coeff(k, v);
        continue;
      }
      if (is_kernel_pair(base, m, k)) {
        (m == mon_xi1eta1() ? sol.da : sol.dc) += v;
        continue;
      }
      double D = opts.check_all_pairs ? divisor_of(base, m, omega, k)
                                      : check_pair(m, k, true);
      if (opts.check_all_pairs) {
        // already screened above, but keep the floor for safety
        if (std::abs(D) < kResonanceFloor * (1.0 + l1_norm(k)))
          throw resonance_error("solve_homological: divisor below floor for " + m.str(),
                                k, m, std::abs(D));
      }
      chi_m.set_coeff(k, cplx(0.0, 1.0) * v / D);
    }
    if (!chi_m.empty()) sol.chi.add_term(m, chi_m);
    if (!r_m.empty()) sol.r.add_term(m, r_m);
  }
  return sol;
}

QuadHamiltonian HomologicalSolution::ntilde_ham(int dim, double strip_width) const {
  bool landau = kind == NormalForm::Kind::landau;
  QuadHamiltonian h(landau ? HamClass::landau : HamClass::full, dim, strip_width);
  if (da != cplx(0.0)) h.set_term(mon_xi1eta1(), TrigPoly::constant(dim, da, strip_width));
  if (dc != cplx(0.0)) {
    Monomial m2 = landau ? mon_xi2xi2() : mon_xi2eta2();
    h.set_term(m2, TrigPoly::constant(dim, dc, strip_width));
  }
  return h;
}

double homological_residual(const NormalForm& base, std::span<const double> omega,
                            const HomologicalSolution& sol, const QuadHamiltonian& q,
                            double sigma) {
  QuadHamiltonian lhs = extended_bracket(sol.chi, base, omega);
  lhs += q;
  lhs -= sol.ntilde_ham(q.dim(), q.strip_width());
  lhs -= sol.r;
  return lhs.norm(sigma);
}

}  // namespace qland
