// Small-divisor screening and the one-step homological solver
// {chi, h} + q = Ntilde + r  with  h = omega.I + N.

#ifndef QLAND_HOMOLOGICAL_HPP
#define QLAND_HOMOLOGICAL_HPP

#include <optional>
#include <vector>

#include "qland/constants.hpp"
#include "qland/quadham.hpp"

namespace qland {

struct DiophantineParams {
  double gamma = 0.1;
  double tau = 2.0;
};

struct DiophantineReport {
  bool ok = false;
  // min over k of |divisor| / threshold(k); < 1 means violated
  double worst_ratio = 0.0;
  MultiIndex worst_k;
  int worst_condition = 0;  // 1: |omega.k + 2 B0|, 2: |omega.k|
};

/// Both lower bounds |omega.k + 2B0| >= gamma/(1+|k|^tau) (all |k| <= Kmax)
/// and |omega.k| >= gamma/|k|^tau (0 < |k| <= Kmax).
DiophantineReport diophantine_check(std::span<const double> omega, double B0,
                                    const DiophantineParams& params, int K_max);

struct DivisorEntry {
  Monomial mon;
  MultiIndex k;
  double divisor = 0.0;  // the eigenvalue is i * divisor
  double modulus = 0.0;
};

struct DivisorReport {
  std::vector<DivisorEntry> entries;  // non-kernel pairs only
  double min_modulus = 0.0;
  DivisorEntry worst;
};

/// All non-kernel divisors nu1 (a1-b1) + nu2 (a2-b2) - omega.k over the
/// class of base.kind, |k|_1 <= K.  Kernel pairs: (xi1 eta1, 0) and
/// (xi2^2, 0) for the Landau kind, (xi1 eta1, 0) and (xi2 eta2, 0) for the
/// symmetric kind.
DivisorReport small_divisors(const NormalForm& base, std::span<const double> omega, int K);

double divisor_of(const NormalForm& base, const Monomial& m,
                  std::span<const double> omega, const MultiIndex& k);
bool is_kernel_pair(const NormalForm& base, const Monomial& m, const MultiIndex& k);

struct SolveOptions {
  /// When positive, pairs whose divisor is exactly +-2 nu2 use the threshold
  /// min(0.5 * nu2_eps^2, kappa) instead of kappa.
  double nu2_eps = 0.0;
  /// Scan every admissible (monomial, mode) pair against kappa, not just the
  /// ones present in q (the D'-membership test used by the measure estimator).
  bool check_all_pairs = true;
};

struct HomologicalSolution {
  QuadHamiltonian chi;
  // kernel averages (complex in general; real for physical Hamiltonians):
  // da multiplies xi1 eta1, dc multiplies xi2^2 (landau) or xi2 eta2 (symmetric)
  cplx da{0.0}, dc{0.0};
  NormalForm::Kind kind = NormalForm::Kind::landau;
  QuadHamiltonian r;        // |k| > K remainder
  double min_divisor = 0.0; // over the scanned pairs

  QuadHamiltonian ntilde_ham(int dim, double strip_width) const;
  double imag_defect() const { return std::max(std::abs(da.imag()), std::abs(dc.imag())); }
};

/// Solve {chi, omega.I + N} + q = Ntilde + r:
///   chi_hat(mon, k) = i q_hat(mon, k) / (nu.(alpha-beta) - omega.k), |k| <= K
///   Ntilde = kernel averages, r = all |k| > K modes.
/// Throws resonance_error (with the offending (k, monomial)) when a scanned
/// divisor modulus falls below kappa.
HomologicalSolution solve_homological(const NormalForm& base, std::span<const double> omega,
                                      const QuadHamiltonian& q, double kappa, int K,
                                      const SolveOptions& opts = {});

/// ||{chi, h} + q - Ntilde - r||_sigma, the defining identity of the solver,
/// evaluated with the bracket engine (coefficientwise).
double homological_residual(const NormalForm& base, std::span<const double> omega,
                            const HomologicalSolution& sol, const QuadHamiltonian& q,
                            double sigma);

}  // namespace qland

#endif
