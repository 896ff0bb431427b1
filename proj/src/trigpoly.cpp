#include "qland/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qland {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

int l1_norm(const MultiIndex& k) {
  int s = 0;
  for (int v : k) s += std::abs(v);
  return s;
}

TrigPoly::TrigPoly(int dim, double strip_width)
    : dim_(dim), strip_width_(strip_width) {
  if (dim < 1) throw std::invalid_argument("TrigPoly: dim must be >= 1");
  if (strip_width < 0) throw std::invalid_argument("TrigPoly: negative strip width");
}

TrigPoly TrigPoly::constant(int dim, cplx value, double strip_width) {
  TrigPoly p(dim, strip_width);
  if (value != cplx(0.0)) p.coeffs_[MultiIndex(dim, 0)] = value;
  return p;
}

TrigPoly TrigPoly::mode(const MultiIndex& k, cplx value, double strip_width) {
  TrigPoly p(static_cast<int>(k.size()), strip_width);
  if (value != cplx(0.0)) p.coeffs_[k] = value;
  return p;
}

TrigPoly TrigPoly::sin1(double strip_width) {
  TrigPoly p(1, strip_width);
  p.coeffs_[{1}] = cplx(0.0, -0.5);
  p.coeffs_[{-1}] = cplx(0.0, 0.5);
  return p;
}

TrigPoly TrigPoly::cos1(double strip_width) {
  TrigPoly p(1, strip_width);
  p.coeffs_[{1}] = cplx(0.5, 0.0);
  p.coeffs_[{-1}] = cplx(0.5, 0.0);
  return p;
}

TrigPoly TrigPoly::analyze(std::span<const cplx> samples, int dim, int grid_n,
                           int cutoff, double strip_width) {
  if (grid_n < 2 * cutoff + 1)
    throw std::invalid_argument("TrigPoly::analyze: grid too coarse, need >= " +
                                std::to_string(2 * cutoff + 1) +
                                " points per dimension");
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(grid_n);
  if (samples.size() != total)
    throw std::invalid_argument("TrigPoly::analyze: sample count mismatch");

  TrigPoly p(dim, strip_width);
  // enumerate k in the l1 ball |k|_1 <= cutoff
  std::vector<MultiIndex> ks;
  MultiIndex k(dim, 0);
  std::function<void(int, int)> rec = [&](int axis, int budget) {
    if (axis == dim) {
      ks.push_back(k);
      return;
    }
    for (int v = -budget; v <= budget; ++v) {
      k[axis] = v;
      rec(axis + 1, budget - std::abs(v));
    }
  };
  rec(0, cutoff);

  std::vector<std::size_t> stride(dim, 1);
  for (int d = dim - 2; d >= 0; --d) stride[d] = stride[d + 1] * grid_n;

  double max_abs = 0.0;
  for (const cplx& s : samples) max_abs = std::max(max_abs, std::abs(s));
  // DFT roundoff floor; keeps analysis of exact trig data exactly sparse
  const double noise = 4.0 * 2.2e-16 * std::sqrt(static_cast<double>(total)) * max_abs;

  const double w = kTwoPi / grid_n;
  for (const auto& kk : ks) {
    cplx acc(0.0);
    // direct DFT; grids stay small (tens of modes)
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      double phase = 0.0;
      for (int d = 0; d < dim; ++d) {
        std::size_t id = rem / stride[d];
        rem %= stride[d];
        phase += kk[d] * (w * static_cast<double>(id));
      }
      acc += samples[flat] * std::exp(cplx(0.0, -phase));
    }
    acc /= static_cast<double>(total);
    if (std::abs(acc) > noise) p.coeffs_[kk] = acc;
  }
  return p;
}

TrigPoly TrigPoly::analyze(const std::function<cplx(const std::vector<double>&)>& f,
                           int dim, int grid_n, int cutoff, double strip_width) {
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(grid_n);
  std::vector<cplx> samples(total);
  std::vector<std::size_t> stride(dim, 1);
  for (int d = dim - 2; d >= 0; --d) stride[d] = stride[d + 1] * grid_n;
  std::vector<double> theta(dim);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int d = 0; d < dim; ++d) {
      std::size_t id = rem / stride[d];
      rem %= stride[d];
      theta[d] = kTwoPi * static_cast<double>(id) / grid_n;
    }
    samples[flat] = f(theta);
  }
  return analyze(samples, dim, grid_n, cutoff, strip_width);
}

int TrigPoly::cutoff() const {
  int c = 0;
  for (const auto& [k, v] : coeffs_) c = std::max(c, l1_norm(k));
  return c;
}

void TrigPoly::check_dim(const MultiIndex& k) const {
  if (static_cast<int>(k.size()) != dim_)
    throw std::invalid_argument("TrigPoly: wavevector dimension mismatch");
}

cplx TrigPoly::coeff(const MultiIndex& k) const {
  check_dim(k);
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? cplx(0.0) : it->second;
}

void TrigPoly::set_coeff(const MultiIndex& k, cplx v) {
  check_dim(k);
  if (v == cplx(0.0))
    coeffs_.erase(k);
  else
    coeffs_[k] = v;
}

void TrigPoly::add_coeff(const MultiIndex& k, cplx v) {
  check_dim(k);
  auto it = coeffs_.find(k);
  if (it == coeffs_.end()) {
    if (v != cplx(0.0)) coeffs_[k] = v;
  } else {
    it->second += v;
    if (it->second == cplx(0.0)) coeffs_.erase(it);
  }
}

double TrigPoly::reality_defect() const {
  double worst = 0.0;
  for (const auto& [k, v] : coeffs_) {
    MultiIndex mk(k);
    for (int& x : mk) x = -x;
    auto it = coeffs_.find(mk);
    cplx other = it == coeffs_.end() ? cplx(0.0) : it->second;
    worst = std::max(worst, std::abs(other - std::conj(v)));
  }
  return worst;
}

cplx TrigPoly::evaluate(std::span<const cplx> theta) const {
  if (static_cast<int>(theta.size()) != dim_)
    throw std::invalid_argument("TrigPoly::evaluate: dimension mismatch");
  for (const cplx& t : theta)
    if (std::abs(t.imag()) > strip_width_ + 1e-15)
      throw std::domain_error("TrigPoly::evaluate: theta outside analyticity strip");
  cplx acc(0.0);
  for (const auto& [k, v] : coeffs_) {
    cplx phase(0.0);
    for (int d = 0; d < dim_; ++d) phase += static_cast<double>(k[d]) * theta[d];
    acc += v * std::exp(cplx(0.0, 1.0) * phase);
  }
  return acc;
}

cplx TrigPoly::evaluate(std::span<const double> theta) const {
  std::vector<cplx> t(theta.begin(), theta.end());
  return evaluate(std::span<const cplx>(t));
}

cplx TrigPoly::evaluate(double theta) const {
  std::vector<cplx> t{cplx(theta, 0.0)};
  return evaluate(std::span<const cplx>(t));
}

cplx TrigPoly::evaluate(cplx theta) const {
  std::vector<cplx> t{theta};
  return evaluate(std::span<const cplx>(t));
}

double TrigPoly::strip_norm(double sigma) const {
  if (sigma > strip_width_ + 1e-15)
    throw std::domain_error("TrigPoly::strip_norm: sigma exceeds strip width");
  double s = 0.0;
  for (const auto& [k, v] : coeffs_) s += std::abs(v) * std::exp(l1_norm(k) * sigma);
  return s;
}

double TrigPoly::l2_mass() const {
  double s = 0.0;
  for (const auto& [k, v] : coeffs_) s += std::norm(v);
  return s;
}

TrigPoly TrigPoly::derivative(int axis) const {
  if (axis < 0 || axis >= dim_) throw std::invalid_argument("TrigPoly::derivative: bad axis");
  TrigPoly out(dim_, strip_width_);
  for (const auto& [k, v] : coeffs_)
    if (k[axis] != 0) out.coeffs_[k] = cplx(0.0, static_cast<double>(k[axis])) * v;
  return out;
}

TrigPoly TrigPoly::directional_derivative(std::span<const double> omega) const {
  if (static_cast<int>(omega.size()) != dim_)
    throw std::invalid_argument("TrigPoly::directional_derivative: dimension mismatch");
  TrigPoly out(dim_, strip_width_);
  for (const auto& [k, v] : coeffs_) {
    double kw = 0.0;
    for (int d = 0; d < dim_; ++d) kw += omega[d] * k[d];
    if (kw != 0.0) out.coeffs_[k] = cplx(0.0, kw) * v;
  }
  return out;
}

TrigPoly TrigPoly::conjugate() const {
  TrigPoly out(dim_, strip_width_);
  for (const auto& [k, v] : coeffs_) {
    MultiIndex mk(k);
    for (int& x : mk) x = -x;
    out.coeffs_[mk] = std::conj(v);
  }
  return out;
}

std::pair<TrigPoly, TrigPoly> TrigPoly::truncate(int K) const {
  TrigPoly low(dim_, strip_width_), tail(dim_, strip_width_);
  for (const auto& [k, v] : coeffs_) {
    if (l1_norm(k) <= K)
      low.coeffs_[k] = v;
    else
      tail.coeffs_[k] = v;
  }
  return {low, tail};
}

double TrigPoly::drop_small_modes(double tol, double sigma) {
  double dropped = 0.0;
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    double mass = std::abs(it->second) * std::exp(l1_norm(it->first) * sigma);
    if (mass < tol) {
      dropped += mass;
      it = coeffs_.erase(it);
    } else {
      ++it;
    }
  }
  return dropped;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("TrigPoly: dimension mismatch");
  for (const auto& [k, v] : o.coeffs_) add_coeff(k, v);
  strip_width_ = std::min(strip_width_, o.strip_width_);
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("TrigPoly: dimension mismatch");
  for (const auto& [k, v] : o.coeffs_) add_coeff(k, -v);
  strip_width_ = std::min(strip_width_, o.strip_width_);
  return *this;
}

TrigPoly& TrigPoly::operator*=(cplx s) {
  if (s == cplx(0.0)) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [k, v] : coeffs_) v *= s;
  return *this;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("TrigPoly: dimension mismatch");
  TrigPoly out(a.dim_, std::min(a.strip_width_, b.strip_width_));
  for (const auto& [ka, va] : a.coeffs_)
    for (const auto& [kb, vb] : b.coeffs_) {
      MultiIndex k(ka);
      for (int d = 0; d < a.dim_; ++d) k[d] += kb[d];
      out.add_coeff(k, va * vb);
    }
  return out;
}

bool TrigPoly::near_zero(double tol) const {
  for (const auto& [k, v] : coeffs_)
    if (std::abs(v) > tol) return false;
  return true;
}

void TrigPoly::prune_zeros() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();)
    it = (it->second == cplx(0.0)) ? coeffs_.erase(it) : std::next(it);
}

double max_coeff_distance(const TrigPoly& a, const TrigPoly& b) {
  double worst = 0.0;
  for (const auto& [k, v] : a.coeffs())
    worst = std::max(worst, std::abs(v - b.coeff(k)));
  for (const auto& [k, v] : b.coeffs())
    worst = std::max(worst, std::abs(v - a.coeff(k)));
  return worst;
}

}  // namespace qland
