#include "qland/kam.hpp"

#include <cmath>
#include <numbers>

namespace qland {

Schedule make_schedule(double eps, double sigma0, int M_max) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("make_schedule: need 0 < eps < 1");
  if (sigma0 <= 0.0) throw std::invalid_argument("make_schedule: sigma0 must be positive");
  Schedule s;
  s.eps0 = eps;
  s.sigma0 = sigma0;
  const double cstar = 3.0 / (std::numbers::pi * std::numbers::pi);  // 1/(2 sum j^-2)
  double sigma_prev = sigma0;
  double eps_prev = eps;
  for (int m = 1; m <= M_max; ++m) {
    double gap = cstar * sigma0 / (static_cast<double>(m) * m);
    double sigma_m = sigma_prev - gap;
    double eps_m = std::pow(eps, std::pow(1.5, m));
    if (eps_m == 0.0) break;  // underflow: schedule ends here
    StepParams p;
    p.m = m;
    p.sigma = sigma_m;
    p.K = static_cast<int>(std::ceil(2.0 * std::log(1.0 / eps_prev) / gap));
    p.kappa = std::pow(eps_prev, 1.0 / 8.0);
    p.eps_target = eps_m;
    s.steps.push_back(p);
    sigma_prev = sigma_m;
    eps_prev = eps_m;
  }
  return s;
}

KamStepOutput kam_step(NormalForm& base, QuadHamiltonian& q,
                       std::span<const double> omega, const StepParams& step,
                       double next_eps_target, const KamOptions& opts) {
  KamStepOutput out;
  out.diag.m = step.m;

  double kappa_eff = opts.policy == ExclusionPolicy::strict
                         ? step.kappa
                         : kResonanceFloor;
  SolveOptions sopts;
  sopts.nu2_eps = opts.nu2_eps;
  // In the strict policy the D' membership scans every pair; in floor policy the
  // per-coefficient floor inside the solve is what matters.
  sopts.check_all_pairs = (opts.policy == ExclusionPolicy::strict);

  HomologicalSolution sol = solve_homological(base, omega, q, kappa_eff, step.K, sopts);

  out.chi = sol.chi;
  out.ntilde = NormalForm{base.kind, sol.da.real(), sol.dc.real()};
  out.diag.min_divisor = sol.min_divisor;
  out.diag.ntilde_a = sol.da.real();
  out.diag.ntilde_c = sol.dc.real();
  out.diag.ntilde_imag = sol.imag_defect();
  out.diag.chi_norm = sol.chi.norm(step.sigma);
  out.diag.r_norm = sol.r.norm(step.sigma);

  if (out.diag.chi_norm > opts.chi_max)
    throw std::overflow_error("kam_step: [chi] too large for the Lie series");

  // exact Lie transport of quadratics:
  //   (h + q) o Phi^1_chi = omega.I + N + Ntilde + q_next
  //   q_next = r + sum_{j>=1} ad^j [ P/(j+1)! + q/j! ],  P = Ntilde + r - q
  const double tail_budget = std::min(next_eps_target * 0.1, 1e-13);
  QuadHamiltonian ntilde_h = sol.ntilde_ham(q.dim(), q.strip_width());
  QuadHamiltonian P = ntilde_h + sol.r - q;
  QuadHamiltonian q_next = sol.r;
  QuadHamiltonian adP = P, adQ = q;
  double factorial = 1.0;
  int j = 0;
  for (j = 1; j <= 48; ++j) {
    adP = poisson_bracket(out.chi, adP);
    adQ = poisson_bracket(out.chi, adQ);
    factorial *= j;
    double c_p = 1.0 / (factorial * (j + 1));
    double c_q = 1.0 / factorial;
    q_next += adP * cplx(c_p, 0.0);
    q_next += adQ * cplx(c_q, 0.0);
    double rem = adP.norm(step.sigma) * c_p + adQ.norm(step.sigma) * c_q;
    if (rem < 0.25 * tail_budget) break;
  }
  out.diag.lie_terms = j;

  out.diag.dropped_tail = q_next.drop_small_modes(
      tail_budget / (10.0 * std::max<std::size_t>(1, q_next.terms().size() * 8)),
      step.sigma);

  base.a += sol.da.real();
  base.c += sol.dc.real();
  q = q_next;
  out.diag.q_norm_after = q.norm(step.sigma);
  return out;
}

KamResult kam_reduce(NormalForm base, QuadHamiltonian q, std::span<const double> omega,
                     const Schedule& schedule, const KamOptions& opts) {
  KamResult res;
  res.normal_form = base;
  double q_norm = q.norm(schedule.sigma0);
  int non_contracting = 0;
  double eps_final = schedule.steps.empty() ? schedule.eps0
                                            : schedule.steps.back().eps_target;

  for (const StepParams& step : schedule.steps) {
    if (opts.q_stop > 0.0 && q_norm < opts.q_stop) break;
    double next_target = step.eps_target;
    try {
      KamStepOutput so = kam_step(base, q, omega, step, next_target, opts);
      so.diag.q_norm_before = q_norm;
      res.steps.push_back(so.diag);
      if (opts.collect_generators) res.generators.push_back(so.chi);
      double new_norm = so.diag.q_norm_after;
      non_contracting = (new_norm >= q_norm) ? non_contracting + 1 : 0;
      q_norm = new_norm;
      if (non_contracting >= opts.divergence_patience) {
        res.status = KamResult::Status::diverged;
        res.message = "no contraction for " + std::to_string(non_contracting) + " steps";
        res.normal_form = base;
        res.q_final_norm = q_norm;
        return res;
      }
    } catch (const resonance_error& e) {
      res.status = KamResult::Status::resonant;
      res.resonant_step = step.m;
      res.resonant_k = e.k;
      res.resonant_mon = e.mon;
      res.message = e.what();
      res.normal_form = base;
      res.q_final_norm = q_norm;
      return res;
    } catch (const std::overflow_error& e) {
      res.status = KamResult::Status::diverged;
      res.message = e.what();
      res.normal_form = base;
      res.q_final_norm = q_norm;
      return res;
    }
    // nondegeneracy gate for the symmetric kind
    if (base.kind == NormalForm::Kind::symmetric && opts.nu2_eps > 0.0 &&
        step.m == opts.nondegenerate_check_step) {
      double eps = opts.nu2_eps;
      if (std::abs(base.c) < 0.25 * eps * eps) {
        res.status = KamResult::Status::degenerate;
        res.message = "nu2 degenerate after the explicit steps (d_omega ~ 0)";
        res.normal_form = base;
        res.q_final_norm = q_norm;
        return res;
      }
    }
  }

  res.normal_form = base;
  res.q_final_norm = q_norm;
  bool ok = q_norm <= std::max(opts.q_stop, eps_final);
  res.status = ok ? KamResult::Status::converged : KamResult::Status::diverged;
  if (!ok) res.message = "final [q] above target";
  return res;
}

KamResult kam_reduce(const LandauBuild& build, std::span<const double> omega,
                     const Schedule& schedule, KamOptions opts) {
  return kam_reduce(build.base, build.q, omega, schedule, opts);
}

KamResult kam_reduce_nondegenerate(const LandauBuild& build, std::span<const double> omega,
                                   const Schedule& schedule, KamOptions opts) {
  if (build.base.kind != NormalForm::Kind::symmetric)
    throw std::invalid_argument("kam_reduce_nondegenerate: symmetric-kind input required");
  opts.nu2_eps = std::abs(build.eps);
  return kam_reduce(build.base, build.q, omega, schedule, opts);
}

}  // namespace qland
