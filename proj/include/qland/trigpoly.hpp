// Truncated Fourier series on the n-torus with analyticity-strip norms.

#ifndef QLAND_TRIGPOLY_HPP
#define QLAND_TRIGPOLY_HPP

#include <complex>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace qland {

using cplx = std::complex<double>;

/// Wavevector k on Z^n, ordered lexicographically (usable as map key).
using MultiIndex = std::vector<int>;

int l1_norm(const MultiIndex& k);

/// Sparse trigonometric polynomial  p(theta) = sum_k c_k e^{i k.theta}.
///
/// Coefficients are stored sparsely keyed by wavevector; cutoff() is the
/// largest stored |k|_1.  strip_width() is the analyticity half-width the
/// norms refer to: evaluate() accepts complex theta with |Im theta|_inf
/// within it, and strip_norm(s) returns the weighted-l1 majorant
/// sum_k |c_k| e^{|k|_1 s}, an upper bound for sup_{|Im theta|<=s}|p|.
class TrigPoly {
 public:
  TrigPoly() : dim_(1), strip_width_(1.0) {}
  explicit TrigPoly(int dim, double strip_width = 1.0);

  static TrigPoly constant(int dim, cplx value, double strip_width = 1.0);
  /// Single mode c e^{i k.theta}.
  static TrigPoly mode(const MultiIndex& k, cplx value, double strip_width = 1.0);
  /// sin / cos of one angle variable (n=1 helpers).
  static TrigPoly sin1(double strip_width = 1.0);
  static TrigPoly cos1(double strip_width = 1.0);

  /// Discrete Fourier analysis of samples on the uniform grid
  /// theta_j = 2*pi*j/grid_n per dimension (row-major, grid_n^dim values).
  /// Requires grid_n >= 2*cutoff+1; throws std::invalid_argument otherwise.
  static TrigPoly analyze(std::span<const cplx> samples, int dim, int grid_n,
                          int cutoff, double strip_width = 1.0);
  static TrigPoly analyze(const std::function<cplx(const std::vector<double>&)>& f,
                          int dim, int grid_n, int cutoff, double strip_width = 1.0);

  int dim() const { return dim_; }
  double strip_width() const { return strip_width_; }
  int cutoff() const;
  bool empty() const { return coeffs_.empty(); }
  std::size_t term_count() const { return coeffs_.size(); }
  const std::map<MultiIndex, cplx>& coeffs() const { return coeffs_; }

  cplx coeff(const MultiIndex& k) const;
  void set_coeff(const MultiIndex& k, cplx v);
  void add_coeff(const MultiIndex& k, cplx v);

  /// Max violation of c(-k) = conj(c(k)); zero for real-valued p.
  double reality_defect() const;
  bool is_real_valued(double tol = 1e-12) const { return reality_defect() <= tol; }

  /// Evaluate at real or complex theta; complex theta must satisfy
  /// |Im theta_j| <= strip_width (throws std::domain_error otherwise).
  cplx evaluate(std::span<const double> theta) const;
  cplx evaluate(std::span<const cplx> theta) const;
  cplx evaluate(double theta) const;   // n=1
  cplx evaluate(cplx theta) const;     // n=1

  /// Weighted-l1 majorant  sum_k |c_k| e^{|k|_1 sigma}; requires
  /// sigma <= strip_width.
  double strip_norm(double sigma) const;
  /// sum_k |c_k|^2 (Parseval mass).
  double l2_mass() const;

  /// d/dtheta_axis (multiplies c_k by i k_axis).
  TrigPoly derivative(int axis) const;
  /// sum_j omega_j d/dtheta_j.
  TrigPoly directional_derivative(std::span<const double> omega) const;
  /// Polynomial with values conj(p(theta)) for real theta.
  TrigPoly conjugate() const;

  /// Split into (modes |k|_1 <= K, remainder); low + tail == *this exactly.
  std::pair<TrigPoly, TrigPoly> truncate(int K) const;

  /// Remove modes whose strip_norm(sigma) contribution is below tol;
  /// returns the total dropped majorant mass.
  double drop_small_modes(double tol, double sigma);

  TrigPoly& operator+=(const TrigPoly& o);
  TrigPoly& operator-=(const TrigPoly& o);
  TrigPoly& operator*=(cplx s);
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator*(TrigPoly a, cplx s) { return a *= s; }
  friend TrigPoly operator*(cplx s, TrigPoly a) { return a *= s; }
  friend TrigPoly operator-(TrigPoly a) { return a *= cplx(-1.0, 0.0); }
  /// Coefficient-space convolution; result cutoff = sum of cutoffs.
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

  bool near_zero(double tol = 0.0) const;

 private:
  void check_dim(const MultiIndex& k) const;
  void prune_zeros();

  int dim_;
  double strip_width_;
  std::map<MultiIndex, cplx> coeffs_;
};

double max_coeff_distance(const TrigPoly& a, const TrigPoly& b);

}  // namespace qland

#endif
