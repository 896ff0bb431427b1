// 4x4 matrices of trig polynomials: quadratic-form matrices, linearized
// flows e^{L(theta)}, and the accumulated generator A(theta) of the
// composed conjugation.

#ifndef QLAND_MATRIXFLOW_HPP
#define QLAND_MATRIXFLOW_HPP

#include <array>

#include "qland/charts.hpp"
#include "qland/quadham.hpp"

namespace qland {

/// theta-dependent 4x4 complex matrix with TrigPoly entries.
class TrigMatrix4 {
 public:
  TrigMatrix4() = default;
  TrigMatrix4(int dim, double strip_width);

  TrigPoly& at(int i, int j) { return e_[4 * i + j]; }
  const TrigPoly& at(int i, int j) const { return e_[4 * i + j]; }

  Mat4c evaluate(std::span<const double> theta) const;
  Mat4c evaluate1(double theta) const;  // n = 1
  TrigMatrix4 directional_derivative(std::span<const double> omega) const;
  double max_strip_norm(double sigma) const;
  int max_mode() const;
  int dim() const { return dim_; }

  /// Analyze a matrix-valued grid function entrywise (n = 1 grid of size G,
  /// theta_j = 2 pi j / G).
  static TrigMatrix4 analyze_grid(const std::vector<Mat4c>& values, int cutoff,
                                  double strip_width);

 private:
  int dim_ = 1;
  double strip_width_ = 1.0;
  std::array<TrigPoly, 16> e_{};
};

/// Symmetric coefficient matrix S with F = (1/2) u.S u, u = (xi1,xi2,eta1,eta2).
TrigMatrix4 form_matrix(const QuadHamiltonian& F);
Mat4c form_matrix_at(const QuadHamiltonian& F, std::span<const double> theta);

/// Hamiltonian flow matrix L = E S (udot = L u) at a frozen theta.
Mat4c flow_matrix_at(const QuadHamiltonian& F, std::span<const double> theta);
Mat4c flow_matrix_of(const NormalForm& n);

/// theta-dependent generator of the composed conjugation
/// e^{A(theta)} = e^{L_1(theta)} ... e^{L_M(theta)} (new -> old coordinates).
struct GeneratorSeries {
  TrigMatrix4 A;
  int grid = 0;                   // analysis grid used (n = 1)
  double reconstruction_error = 0.0;  // max ||e^{A(theta)} - product|| on grid
  double sup_norm = 0.0;              // max ||A(theta)|| on grid

  Mat4c exp_at(double theta) const;
};

/// Build A(theta) by matrix logarithm of the composed step exponentials on a
/// theta grid, then Fourier analysis (n = 1).  Throws std::runtime_error on
/// logarithm branch trouble (an eigenvalue of the product crossing -1).
GeneratorSeries assemble_generator(const std::vector<QuadHamiltonian>& chis,
                                   int grid = 256);

/// Max over the grid of || A' J + J A' || with A' = A(theta): Hamiltonian-
/// matrix (sp) defect of the assembled generator.
double sp_defect(const GeneratorSeries& gen, int samples = 64);

}  // namespace qland

#endif
