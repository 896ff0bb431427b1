// Linear symplectic charts between real (x,p) and complex (z, zbar)
// coordinates, gauge field data, and the real quadratic-form matrices
// driving the flow.

#ifndef QLAND_CHARTS_HPP
#define QLAND_CHARTS_HPP

#include <Eigen/Dense>

#include "qland/trigpoly.hpp"

namespace qland {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Vec4c = Eigen::Vector4cd;
using Mat4c = Eigen::Matrix4cd;

enum class Gauge { landau, symmetric, symmetric_scalar };

/// Standard real symplectic matrix for u = (x1,x2,p1,p2).
Mat4 real_J();
/// Matrix of the form i dxi ^ deta in u = (xi1,xi2,eta1,eta2).
Mat4c complex_J();
/// E with udot = E S u for the Hamiltonian h = (1/2) u.S u in the complex
/// chart (xidot = -i dh/deta, etadot = +i dh/dxi).
Mat4c complex_E();

/// tau0 for the Landau gauge: rows give (z1, z2, z1bar, z2bar) in terms of
/// (x1, x2, p1, p2).
Mat4c landau_chart(double B0);
/// tau0 for the symmetric gauge (via the intermediate (y, eta) variables).
Mat4c symmetric_chart(double B0);
/// xi2' = xi2 - eta2, eta2' = eta2 on top of a z-chart.
Mat4c ambio_matrix();

Mat4c chart_matrix(Gauge g, double B0);  // landau/symmetric tau0

/// Time-dependent field data.
struct GaugeSpec {
  Gauge gauge = Gauge::landau;
  double B0 = 1.0;
  TrigPoly f;        // modulation profile on T^n
  double eps = 0.0;
  std::vector<double> omega;  // frequency vector, size = f.dim()

  double B_of(double t) const;       // B0 + eps f(omega t)
  double Bdot_of(double t) const;    // eps omega.grad f(omega t)
};

struct Fields {
  double B_signed = 0.0;   // d1 A2 - d2 A1
  Eigen::Vector2d E{0.0, 0.0};
};

/// Magnetic scalar and electric field of the named potential family at (t,x).
/// symmetric_scalar adds the quadratic scalar potential that equalizes the
/// fields with the Landau gauge.
Fields fields_from_potentials(const GaugeSpec& spec, double t, const Eigen::Vector2d& x);

/// Real symmetric matrix S(theta) with h = (1/2) u.S u, u = (x1,x2,p1,p2).
Mat4 real_form_matrix(const GaugeSpec& spec, std::span<const double> theta);
/// Convenience: S at time t (theta = omega t).
Mat4 real_form_matrix_t(const GaugeSpec& spec, double t);

/// Symplectic-form defect ||M^T J M - J||_inf of a real or complex map.
double symplectic_defect(const Mat4& M);
double symplectic_defect_complex(const Mat4c& M);

}  // namespace qland

#endif
