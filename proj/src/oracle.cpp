#include "qland/oracle.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include <Eigen/Eigenvalues>

namespace qland {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double omega_linf(std::span<const double> omega) {
  double s = 0.0;
  for (double w : omega) s += std::abs(w);
  return s;
}
}  // namespace

Trajectory integrate_flow(const GaugeSpec& spec, const Vec4& x0, double T, double dt,
                          const IntegrateOptions& opts) {
  if (spec.omega.size() != static_cast<std::size_t>(spec.f.dim()))
    throw std::invalid_argument("integrate_flow: omega dimension mismatch");
  const double rate = std::max(2.0 * spec.B0, omega_linf(spec.omega));
  if (dt > 0.05 / rate + 1e-15)
    throw std::invalid_argument("integrate_flow: dt too large for the fast scales");

  const auto n_steps = static_cast<std::int64_t>(std::ceil(T / dt));
  Trajectory traj;
  traj.times.reserve(static_cast<std::size_t>(n_steps / opts.store_stride) + 2);
  traj.states.reserve(traj.times.capacity());
  traj.energy.reserve(traj.times.capacity());

  const Mat4 J = real_J();
  Vec4 u = x0;
  Mat4 Phi = Mat4::Identity();

  // A(t) = Jr S(omega t + theta0); one evaluation serves state and matrix
  auto A_of = [&](double t) -> Mat4 {
    std::vector<double> th(spec.omega.size());
    for (std::size_t i = 0; i < spec.omega.size(); ++i)
      th[i] = spec.omega[i] * t + opts.theta0;
    return J * real_form_matrix(spec, th);
  };
  auto energy_of = [&](double t, const Vec4& v) {
    std::vector<double> th(spec.omega.size());
    for (std::size_t i = 0; i < spec.omega.size(); ++i)
      th[i] = spec.omega[i] * t + opts.theta0;
    Mat4 S = real_form_matrix(spec, th);
    return 0.5 * v.dot(S * v);
  };

  auto store = [&](double t, const Vec4& v) {
    traj.times.push_back(t);
    traj.states.push_back(v);
    traj.energy.push_back(energy_of(t, v));
  };
  store(0.0, u);
  traj.running_sup = u.norm();

  std::int64_t defect_check = std::max<std::int64_t>(1, n_steps / 256);
  for (std::int64_t s = 0; s < n_steps; ++s) {
    double t = s * dt;
    double h = std::min(dt, T - t);
    Mat4 A1 = A_of(t), A2 = A_of(t + h / 2), A4 = A_of(t + h);

    Vec4 k1 = A1 * u;
    Vec4 k2 = A2 * (u + (h / 2) * k1);
    Vec4 k3 = A2 * (u + (h / 2) * k2);
    Vec4 k4 = A4 * (u + h * k3);
    u += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);

    if (opts.with_fundamental) {
      Mat4 K1 = A1 * Phi;
      Mat4 K2 = A2 * (Phi + (h / 2) * K1);
      Mat4 K3 = A2 * (Phi + (h / 2) * K2);
      Mat4 K4 = A4 * (Phi + h * K3);
      Phi += (h / 6) * (K1 + 2 * K2 + 2 * K3 + K4);
      if (s % defect_check == 0 || s + 1 == n_steps) {
        double d = (Phi.transpose() * J * Phi - J).cwiseAbs().maxCoeff();
        traj.sympl_defect = std::max(traj.sympl_defect, d);
        if (d > opts.defect_limit)
          throw std::runtime_error("integrate_flow: symplectic defect exceeds limit; reduce dt");
      }
    }
    traj.running_sup = std::max(traj.running_sup, u.norm());
    if ((s + 1) % opts.store_stride == 0 || s + 1 == n_steps) store(t + h, u);
  }
  traj.fundamental = Phi;
  return traj;
}

DriftRate drift_rate(const Trajectory& traj, int coord) {
  if (coord < 0 || coord > 3) throw std::invalid_argument("drift_rate: coord in 0..3");
  const std::size_t n = traj.times.size();
  if (n < 32) throw std::invalid_argument("drift_rate: window too short");
  const double T = traj.times.back();
  std::size_t first = 0;
  while (first < n && traj.times[first] < T / 2) ++first;
  const std::size_t m = n - first;
  if (m < 16) throw std::invalid_argument("drift_rate: window too short");

  double st = 0.0, sx = 0.0;
  for (std::size_t i = first; i < n; ++i) {
    st += traj.times[i];
    sx += traj.states[i](coord);
  }
  double tbar = st / m, xbar = sx / m;
  double sxx = 0.0, stt = 0.0;
  for (std::size_t i = first; i < n; ++i) {
    double dtc = traj.times[i] - tbar;
    stt += dtc * dtc;
    sxx += dtc * (traj.states[i](coord) - xbar);
  }
  DriftRate out;
  out.slope = sxx / stt;
  double ss_res = 0.0;
  for (std::size_t i = first; i < n; ++i) {
    double r = traj.states[i](coord) - xbar - out.slope * (traj.times[i] - tbar);
    ss_res += r * r;
  }
  out.stderr_slope = std::sqrt(ss_res / (static_cast<double>(m) - 2.0) / stt);
  return out;
}

BoundednessMetric boundedness_metric(const Trajectory& traj) {
  BoundednessMetric out;
  const std::size_t n = traj.times.size();
  std::vector<double> run(n);
  double sup = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sup = std::max(sup, traj.states[i].norm());
    run[i] = sup;
  }
  out.sup = std::max(sup, traj.running_sup);
  // log-log slope over the second half (skips the initial transient)
  std::size_t first = n / 2;
  double st = 0.0, sx = 0.0, stt = 0.0, sxx = 0.0;
  std::size_t m = 0;
  for (std::size_t i = first; i < n; ++i) {
    if (traj.times[i] <= 0.0 || run[i] <= 0.0) continue;
    ++m;
    st += std::log(traj.times[i]);
    sx += std::log(run[i]);
  }
  if (m < 8) return out;
  double tbar = st / m, xbar = sx / m;
  for (std::size_t i = first; i < n; ++i) {
    if (traj.times[i] <= 0.0 || run[i] <= 0.0) continue;
    double dtc = std::log(traj.times[i]) - tbar;
    stt += dtc * dtc;
    sxx += dtc * (std::log(run[i]) - xbar);
  }
  out.growth_exponent = stt > 0.0 ? sxx / stt : 0.0;
  return out;
}

RotationNumbers rotation_numbers(const GaugeSpec& spec, double dt) {
  if (spec.omega.size() != 1)
    throw std::invalid_argument("rotation_numbers: implemented for n = 1");
  const double w = std::abs(spec.omega[0]);
  const double Tper = kTwoPi / w;
  const double rate = std::max(2.0 * spec.B0, w);
  if (dt <= 0.0) dt = std::min(0.02 / rate, Tper / 4000.0);

  IntegrateOptions opts;
  opts.store_stride = 1 << 30;  // fundamental matrix only
  Trajectory traj = integrate_flow(spec, Vec4::Zero(), Tper, dt, opts);
  const Mat4& Phi = traj.fundamental;

  RotationNumbers out;
  Eigen::EigenSolver<Mat4> es(Phi);
  Vec4c lam = es.eigenvalues();
  Mat4c V = es.eigenvectors();
  Mat4c Tc = chart_matrix(spec.gauge, spec.B0);

  for (int i = 0; i < 4; ++i)
    out.unit_circle_defect =
        std::max(out.unit_circle_defect, std::abs(std::abs(lam(i)) - 1.0));
  if (out.unit_circle_defect > 1e-6) out.hyperbolic_warning = true;

  // classify eigenvectors by their dominant chart component
  auto branch_near = [&](double raw, double target) {
    double best = raw;
    for (int n = -8; n <= 8; ++n) {
      double cand = raw + n * w;
      if (std::abs(cand - target) < std::abs(best - target)) best = cand;
    }
    return best;
  };

  bool nu1_set = false, nu2_set = false;
  std::vector<int> unit_idx;
  for (int i = 0; i < 4; ++i) {
    Vec4c zv = Tc * V.col(i);
    int dom = 0;
    for (int j = 1; j < 4; ++j)
      if (std::abs(zv(j)) > std::abs(zv(dom))) dom = j;
    double raw = -std::arg(lam(i)) / Tper;
    if (dom == 0) {  // z1-like: lambda = e^{-i nu1 T}
      out.nu1 = branch_near(raw, 2.0 * spec.B0);
      nu1_set = true;
    } else if (dom == 1 && spec.gauge != Gauge::landau) {
      out.nu2 = branch_near(raw, 0.0);
      nu2_set = true;
    }
    if (std::abs(lam(i) - cplx(1.0, 0.0)) < 1e-3) unit_idx.push_back(i);
  }
  if (!nu1_set) out.hyperbolic_warning = true;
  (void)nu2_set;

  if (spec.gauge == Gauge::landau) {
    // unipotent z2 block: restrict Phi to the generalized eigenspace of 1,
    // i.e. the range of (Phi - lambda)(Phi - conj(lambda)) for the elliptic
    // pair, and read the nilpotent part in (Re z2, Im z2) coordinates
    cplx lam_ell(0.0);
    double best = -1.0;
    for (int i = 0; i < 4; ++i)
      if (std::abs(std::arg(lam(i))) > best) {
        best = std::abs(std::arg(lam(i)));
        lam_ell = lam(i);
      }
    // real quadratic in Phi annihilating the elliptic pair
    Mat4 Pz = Phi * Phi - 2.0 * lam_ell.real() * Phi + std::norm(lam_ell) * Mat4::Identity();
    Eigen::ColPivHouseholderQR<Eigen::Matrix<double, 4, 4>> qr(Pz);
    Eigen::Matrix<double, 4, 4> Q = qr.householderQ();
    Eigen::Matrix<double, 4, 2> B = Q.leftCols<2>();
    Eigen::Matrix2d M = B.transpose() * Phi * B;
    Eigen::Matrix2d N = M - Eigen::Matrix2d::Identity();
    out.jordan_block = N.cwiseAbs().maxCoeff() > 1e-6;
    // z2 coordinates of the basis columns
    Vec4c a0 = Tc * B.col(0).cast<cplx>();
    Vec4c a1 = Tc * B.col(1).cast<cplx>();
    Eigen::Matrix2d C;
    C << a0(1).real(), a1(1).real(), a0(1).imag(), a1(1).imag();
    Eigen::Matrix2d Nz = C * N * C.inverse();
    out.drift_coeff = -Nz(0, 1) / (4.0 * Tper);
  }
  return out;
}

double conjugation_residual(const NormalForm& base0, const QuadHamiltonian& q0,
                            const KamResult& result, std::span<const double> omega,
                            int grid) {
  if (q0.dim() != 1)
    throw std::invalid_argument("conjugation_residual: implemented for n = 1");
  GeneratorSeries gen = assemble_generator(result.generators, grid);
  if (result.generators.empty()) gen.A = TrigMatrix4(1, q0.strip_width());

  const int G = std::max(grid, 4 * (gen.A.max_mode() + q0.max_mode()) + 32);
  std::vector<Mat4c> expA(G);
  for (int g = 0; g < G; ++g) expA[g] = gen.A.evaluate1(kTwoPi * g / G).exp();
  TrigMatrix4 expA_tm = TrigMatrix4::analyze_grid(expA, G / 2 - 1, q0.strip_width());
  TrigMatrix4 dExpA = expA_tm.directional_derivative(omega);

  QuadHamiltonian H = q0 + normal_form_ham(base0, q0.dim(), q0.strip_width());
  Mat4c Linf = flow_matrix_of(result.normal_form);

  double worst = 0.0;
  for (int g = 0; g < G; ++g) {
    double th = kTwoPi * g / G;
    std::vector<double> thv{th};
    Mat4c LH = flow_matrix_at(H, thv);
    Mat4c R = expA[g].inverse() * (LH * expA[g] - dExpA.evaluate1(th)) - Linf;
    worst = std::max(worst, R.cwiseAbs().maxCoeff());
  }
  return worst;
}

MeasureEstimate measure_excluded(double eps, double B0, const TrigPoly& f, int n_samples,
                                 std::uint64_t seed, int jobs, double sigma0, int M_max) {
  if (n_samples < 1000)
    throw std::invalid_argument("measure_excluded: need N >= 1000 for a meaningful estimate");
  Schedule schedule = make_schedule(eps, sigma0, M_max);
  KamOptions opts;
  opts.policy = ExclusionPolicy::strict;
  opts.collect_generators = false;

  std::vector<std::uint8_t> excluded(n_samples, 0);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n_samples) return;
      // per-sample generator keeps the estimate independent of scheduling
      std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (i + 1)));
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      double w = kTwoPi * (1.0 - unif(rng));  // (0, 2 pi]
      std::vector<double> om{w};
      auto build = build_landau(B0, f, eps);
      KamResult res = kam_reduce(build, om, schedule, opts);
      excluded[i] = res.status == KamResult::Status::resonant ? 1 : 0;
    }
  };
  jobs = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  MeasureEstimate est;
  est.total = n_samples;
  for (auto e : excluded) est.excluded += e;
  est.fraction = static_cast<double>(est.excluded) / n_samples;
  est.ci_halfwidth =
      1.96 * std::sqrt(std::max(est.fraction * (1.0 - est.fraction), 1e-12) / n_samples);
  return est;
}

}  // namespace qland
