// Ground truth by brute force: integrate the exact linear time-quasi-periodic
// flow, extract drift rates, boundedness metrics, rotation numbers and
// conjugation residuals; estimate the excluded-frequency measure.

#ifndef QLAND_ORACLE_HPP
#define QLAND_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "qland/charts.hpp"
#include "qland/kam.hpp"

namespace qland {

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec4> states;       // (x1, x2, p1, p2), possibly strided
  std::vector<double> energy;     // h(t, state) samples
  Mat4 fundamental = Mat4::Identity();
  double sympl_defect = 0.0;      // max ||Phi' J Phi - J|| seen
  double running_sup = 0.0;       // sup_t |state(t)| over the whole run
};

struct IntegrateOptions {
  double theta0 = 0.0;        // initial torus phase (n = 1)
  int store_stride = 1;       // keep every stride-th sample
  bool with_fundamental = true;
  double defect_limit = 1e-6; // step-size failure beyond this
};

/// RK4 on udot = Jr S(omega t + theta0) u together with the fundamental
/// matrix.  Requires dt <= 0.05 / max(2 B0, |omega|_1).
Trajectory integrate_flow(const GaugeSpec& spec, const Vec4& x0, double T, double dt,
                          const IntegrateOptions& opts = {});

struct DriftRate {
  double slope = 0.0;
  double stderr_slope = 0.0;  // residual-based confidence
};

/// Least-squares slope of states[coord] over the window [T/2, T].
DriftRate drift_rate(const Trajectory& traj, int coord);

struct BoundednessMetric {
  double sup = 0.0;
  double growth_exponent = 0.0;  // log-log slope of sup_{s<=t}|state| vs t
};

BoundednessMetric boundedness_metric(const Trajectory& traj);

struct RotationNumbers {
  double nu1 = 0.0;            // z1 rotation frequency
  double nu2 = 0.0;            // z2 rotation frequency (symmetric gauge)
  double drift_coeff = 0.0;    // Landau gauge: c with Re z2(T)-shift = -4 c T Im z2(0)
  bool jordan_block = false;   // Landau gauge: defective unit eigenvalue found
  bool hyperbolic_warning = false;
  double unit_circle_defect = 0.0;
};

/// Frequencies from the fundamental-matrix spectrum over one period
/// 2 pi / |omega| (n = 1), phases unwrapped to the branch nearest the
/// unperturbed values {2 B0, 0}.
RotationNumbers rotation_numbers(const GaugeSpec& spec, double dt = 0.0);

/// Max over a theta grid of ||e^{-A}(L_H(theta) e^{A} - omega.d_theta e^{A})
/// - L_infty||: zero iff e^{A(omega t)} exactly conjugates the flow of
/// base + q to the constant normal form.
double conjugation_residual(const NormalForm& base0, const QuadHamiltonian& q0,
                            const KamResult& result, std::span<const double> omega,
                            int grid = 256);

struct MeasureEstimate {
  double fraction = 0.0;
  double ci_halfwidth = 0.0;  // 95% binomial normal approximation
  int excluded = 0;
  int total = 0;
};

/// Monte-Carlo fraction of omega in (0, 2pi] for which the Landau reduction
/// reports a resonance under the strict exclusion rule.  Deterministic for a
/// fixed seed regardless of the number of workers.
MeasureEstimate measure_excluded(double eps, double B0, const TrigPoly& f, int n_samples,
                                 std::uint64_t seed, int jobs = 1, double sigma0 = 1.0,
                                 int M_max = 12);

}  // namespace qland

#endif
