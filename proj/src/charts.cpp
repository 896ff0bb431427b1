#include "qland/charts.hpp"

#include <cmath>
#include <stdexcept>

namespace qland {

Mat4 real_J() {
  Mat4 J = Mat4::Zero();
  J(0, 2) = J(1, 3) = 1.0;
  J(2, 0) = J(3, 1) = -1.0;
  return J;
}

Mat4c complex_J() {
  Mat4c J = Mat4c::Zero();
  J(0, 2) = J(1, 3) = cplx(0.0, 1.0);
  J(2, 0) = J(3, 1) = cplx(0.0, -1.0);
  return J;
}

Mat4c complex_E() {
  Mat4c E = Mat4c::Zero();
  E(0, 2) = E(1, 3) = cplx(0.0, -1.0);
  E(2, 0) = E(3, 1) = cplx(0.0, 1.0);
  return E;
}

Mat4c landau_chart(double B0) {
  if (B0 <= 0.0) throw std::invalid_argument("landau_chart: B0 must be positive");
  const double s = std::sqrt(2.0 * B0);
  Mat4c T = Mat4c::Zero();
  // z1 = (B0 x2 - p1)/s + i p2/s ;  z2 = (B0 x1 - p2)/s + i p1/s
  T(0, 1) = B0 / s;
  T(0, 2) = -1.0 / s;
  T(0, 3) = cplx(0.0, 1.0 / s);
  T(1, 0) = B0 / s;
  T(1, 3) = -1.0 / s;
  T(1, 2) = cplx(0.0, 1.0 / s);
  T.row(2) = T.row(0).conjugate();
  T.row(3) = T.row(1).conjugate();
  return T;
}

Mat4c symmetric_chart(double B0) {
  if (B0 <= 0.0) throw std::invalid_argument("symmetric_chart: B0 must be positive");
  const double rb = std::sqrt(B0), s2 = std::sqrt(2.0);
  Mat4c T = Mat4c::Zero();
  // y1 = -p1/rb + (rb/2) x2,  eta1 = (rb/2) x1 + p2/rb,  z1 = (y1 + i eta1)/s2
  // y2 = -p1/rb - (rb/2) x2,  eta2 = (rb/2) x1 - p2/rb,  z2 = (y2 + i eta2)/s2
  T(0, 0) = cplx(0.0, rb / (2.0 * s2));
  T(0, 1) = rb / (2.0 * s2);
  T(0, 2) = -1.0 / (rb * s2);
  T(0, 3) = cplx(0.0, 1.0 / (rb * s2));
  T(1, 0) = cplx(0.0, rb / (2.0 * s2));
  T(1, 1) = -rb / (2.0 * s2);
  T(1, 2) = -1.0 / (rb * s2);
  T(1, 3) = cplx(0.0, -1.0 / (rb * s2));
  T.row(2) = T.row(0).conjugate();
  T.row(3) = T.row(1).conjugate();
  return T;
}

Mat4c ambio_matrix() {
  Mat4c C = Mat4c::Identity();
  C(1, 3) = -1.0;  // xi2' = xi2 - eta2
  return C;
}

Mat4c chart_matrix(Gauge g, double B0) {
  return g == Gauge::landau ? landau_chart(B0) : symmetric_chart(B0);
}

double GaugeSpec::B_of(double t) const {
  std::vector<double> th(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) th[i] = omega[i] * t;
  return B0 + eps * f.evaluate(std::span<const double>(th)).real();
}

double GaugeSpec::Bdot_of(double t) const {
  std::vector<double> th(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) th[i] = omega[i] * t;
  TrigPoly df = f.directional_derivative(omega);
  return eps * df.evaluate(std::span<const double>(th)).real();
}

Fields fields_from_potentials(const GaugeSpec& spec, double t, const Eigen::Vector2d& x) {
  Fields out;
  const double B = spec.B_of(t), Bd = spec.Bdot_of(t);
  switch (spec.gauge) {
    case Gauge::landau:
      // A = B(t) (x2, 0), U = 0
      out.B_signed = -B;
      out.E = Eigen::Vector2d(-Bd * x[1], 0.0);
      break;
    case Gauge::symmetric:
      // A = (B/2)(x2, -x1), U = 0
      out.B_signed = -B;
      out.E = Eigen::Vector2d(-Bd * x[1] / 2.0, Bd * x[0] / 2.0);
      break;
    case Gauge::symmetric_scalar:
      // A = (B/2)(x2, -x1), U = +(B'/2) x1 x2: E = -dA/dt - grad U = (-B' x2, 0)
      out.B_signed = -B;
      out.E = Eigen::Vector2d(-Bd * x[1], 0.0);
      break;
  }
  return out;
}

Mat4 real_form_matrix(const GaugeSpec& spec, std::span<const double> theta) {
  const double B = spec.B0 + spec.eps * spec.f.evaluate(theta).real();
  Mat4 S = Mat4::Zero();
  if (spec.gauge == Gauge::landau) {
    // h = (p1 - B x2)^2 + p2^2
    S(1, 1) = 2.0 * B * B;
    S(1, 2) = S(2, 1) = -2.0 * B;
    S(2, 2) = 2.0;
    S(3, 3) = 2.0;
  } else {
    // h = (p1 - B/2 x2)^2 + (p2 + B/2 x1)^2
    S(0, 0) = B * B / 2.0;
    S(0, 3) = S(3, 0) = B;
    S(1, 1) = B * B / 2.0;
    S(1, 2) = S(2, 1) = -B;
    S(2, 2) = 2.0;
    S(3, 3) = 2.0;
  }
  return S;
}

Mat4 real_form_matrix_t(const GaugeSpec& spec, double t) {
  std::vector<double> th(spec.omega.size());
  for (std::size_t i = 0; i < spec.omega.size(); ++i) th[i] = spec.omega[i] * t;
  return real_form_matrix(spec, th);
}

double symplectic_defect(const Mat4& M) {
  Mat4 J = real_J();
  return (M.transpose() * J * M - J).cwiseAbs().maxCoeff();
}

double symplectic_defect_complex(const Mat4c& M) {
  Mat4c J = complex_J();
  return (M.transpose() * J * M - J).cwiseAbs().maxCoeff();
}

}  // namespace qland
