// The iterative reduction: schedules, repeated homological solves,
// normal-form accumulation, generator assembly, convergence diagnostics.

#ifndef QLAND_KAM_HPP
#define QLAND_KAM_HPP

#include <string>
#include <vector>

#include "qland/homological.hpp"
#include "qland/matrixflow.hpp"
#include "qland/quadham.hpp"

namespace qland {

struct StepParams {
  int m = 0;
  double sigma = 0.0;       // strip width after this step
  int K = 0;                // Fourier cutoff of the solve
  double kappa = 0.0;       // divisor threshold
  double eps_target = 0.0;  // expected [q_m]
};

struct Schedule {
  double eps0 = 0.0;
  double sigma0 = 0.0;
  std::vector<StepParams> steps;
};

/// sigma_{m-1}-sigma_m = C* sigma0 m^{-2} (C*^{-1} = 2 sum j^{-2}, so
/// sigma_m decreases to sigma0/2), K_m = 2 (sigma_{m-1}-sigma_m)^{-1}
/// ln(1/eps_{m-1}), kappa_m = eps_{m-1}^{1/8}, eps_m = eps^{(3/2)^m}.
/// Stops at M_max or when eps_m underflows.  Requires 0 < eps < 1.
Schedule make_schedule(double eps, double sigma0, int M_max);

enum class ExclusionPolicy {
  /// divisor < kappa_m excludes omega (the D'-set membership rule; used by
  /// the measure estimator)
  strict,
  /// reject only near-exact resonances; convergence is guarded by the
  /// divergence check (used for fixed-omega reductions)
  floor,
};

struct KamOptions {
  ExclusionPolicy policy = ExclusionPolicy::floor;
  double q_stop = 1e-13;      // stop once [q_m] falls below (0 disables)
  double chi_max = 0.5;       // Lie series safety bound on [chi]
  int divergence_patience = 3;
  double nu2_eps = 0.0;       // enables the min(0.5 eps^2, kappa) rule
  bool collect_generators = true;
  /// symmetric runs: after this step, require |nu2| >= 0.25 eps^2
  int nondegenerate_check_step = 2;
};

struct StepDiagnostics {
  int m = 0;
  double q_norm_before = 0.0;  // [q_{m-1}] at sigma_{m-1}
  double q_norm_after = 0.0;   // [q_m] at sigma_m
  double chi_norm = 0.0;
  double r_norm = 0.0;
  double min_divisor = 0.0;
  double ntilde_a = 0.0, ntilde_c = 0.0;
  double dropped_tail = 0.0;
  double ntilde_imag = 0.0;
  int lie_terms = 0;
};

struct KamResult {
  enum class Status { converged, resonant, diverged, degenerate };
  Status status = Status::diverged;
  NormalForm normal_form;
  std::vector<StepDiagnostics> steps;
  std::vector<QuadHamiltonian> generators;  // chi_1 .. chi_M
  double q_final_norm = 0.0;
  // resonance details when status == resonant
  int resonant_step = 0;
  MultiIndex resonant_k;
  Monomial resonant_mon;
  std::string message;

  bool converged() const { return status == Status::converged; }
};

struct KamStepOutput {
  QuadHamiltonian chi;
  NormalForm ntilde;
  StepDiagnostics diag;
};

/// One step: solve the homological equation at (K_m, kappa_m), then
/// transport h_m + q_m through the time-1 flow of chi by the exact Lie
/// series on quadratic forms,
///   q_{m+1} = r + sum_{j>=1} ad_chi^j [ P/(j+1)! + q_m/j! ],
///   P = Ntilde + r - q_m,
/// truncated once terms fall below the tail budget.
KamStepOutput kam_step(NormalForm& base, QuadHamiltonian& q,
                       std::span<const double> omega, const StepParams& step,
                       double next_eps_target, const KamOptions& opts);

/// Full reduction of base + q.  Landau kind (degenerate xi2 block) or
/// symmetric kind (nu2 ~ d eps^2 after two steps) per base.kind.
KamResult kam_reduce(NormalForm base, QuadHamiltonian q, std::span<const double> omega,
                     const Schedule& schedule, const KamOptions& opts = {});

/// Landau-gauge entry point.
KamResult kam_reduce(const LandauBuild& build, std::span<const double> omega,
                     const Schedule& schedule, KamOptions opts = {});

/// Symmetric-gauge entry point: runs the two explicit steps, requires the
/// emerging nu2 to be nondegenerate (|nu2| >= 0.25 eps^2, i.e. d != 0),
/// then continues with the min(0.5 eps^2, kappa) divisor rule.
KamResult kam_reduce_nondegenerate(const LandauBuild& build, std::span<const double> omega,
                                   const Schedule& schedule, KamOptions opts = {});

}  // namespace qland

#endif
