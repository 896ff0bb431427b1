// Closed-form first-two-step objects of the reduction: g_omega, c_omega,
// d_omega, a_omega and the explicit first generator chi1.

#ifndef QLAND_CONSTANTS_HPP
#define QLAND_CONSTANTS_HPP

#include <span>
#include <stdexcept>
#include <string>

#include "qland/quadham.hpp"

namespace qland {

/// A small divisor fell below its admissibility threshold.
class resonance_error : public std::runtime_error {
 public:
  resonance_error(std::string what, MultiIndex k, Monomial mon, double modulus)
      : std::runtime_error(std::move(what)), k(std::move(k)), mon(mon), modulus(modulus) {}
  resonance_error(std::string what, MultiIndex k, double modulus)
      : std::runtime_error(std::move(what)), k(std::move(k)), modulus(modulus) {}

  MultiIndex k;
  Monomial mon{};
  double modulus = 0.0;
};

/// Divisors below 1e-8 (1+|k|) are treated as resonances rather than huge
/// coefficients; silent blow-up would corrupt downstream fits.
inline constexpr double kResonanceFloor = 1e-8;

void check_divisor(double value, const MultiIndex& k, const char* where);

/// g_omega(theta) = -(1/sqrt(2 B0)) sum_{k != 0} (omega.k / (omega.k + 2 B0))
///                  fhat(k) e^{i k theta}
TrigPoly g_omega(const TrigPoly& f, std::span<const double> omega, double B0);

/// Second-order coefficient of the xi2^2 resonant monomial in the Landau
/// gauge: c = -(1/2B0) sum fhat(k) fhat(-k) (omega.k)^2 / ((omega.k)^2 - 4B0^2).
/// Computed both from the mode sum and by quadrature of the g_omega integral
/// (c = -<g^2>); the two must agree to 1e-10.
double c_omega(const TrigPoly& f, std::span<const double> omega, double B0);

/// Second-order coefficient of xi2 eta2 in the symmetric gauge:
/// d = +(1/2B0) sum fhat(k) fhat(-k) (omega.k)^2 / ((omega.k)^2 - 4B0^2)
/// (= +<g^2>, = -c_omega); dual-computed like c_omega.
double d_omega(const TrigPoly& f, std::span<const double> omega, double B0);

/// Second-order xi1 eta1 frequency shift in the Landau gauge:
/// a = (1/B0) sum fhat(k) fhat(-k) (omega.k)^2 / ((omega.k)^2 - 16 B0^2).
double a_omega(const TrigPoly& f, std::span<const double> omega, double B0);

struct StepConstants {
  double omega_scalar = 0.0;  // n = 1 convenience
  double B0 = 0.0;
  double c = 0.0, d = 0.0, a = 0.0;
  bool resonant = false;
};

StepConstants step_constants(const TrigPoly& f, std::span<const double> omega, double B0);

/// Exact first-step generator for the Landau build: the homological solution
/// of {chi1, h0} + r1 = 0 with h0 = omega.I + 2 B0 xi1 eta1, in the chart
/// where the perturbation is independent of eta2.  eps-linear.
QuadHamiltonian chi1_landau(const TrigPoly& f, std::span<const double> omega,
                            double B0, double eps);

/// Symmetric-gauge analogue (full class).
QuadHamiltonian chi1_symmetric(const TrigPoly& f, std::span<const double> omega,
                               double B0, double eps);

}  // namespace qland

#endif
