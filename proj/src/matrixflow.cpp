#include "qland/matrixflow.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qland {

TrigMatrix4::TrigMatrix4(int dim, double strip_width)
    : dim_(dim), strip_width_(strip_width) {
  for (auto& p : e_) p = TrigPoly(dim, strip_width);
}

Mat4c TrigMatrix4::evaluate(std::span<const double> theta) const {
  Mat4c M;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) M(i, j) = at(i, j).evaluate(theta);
  return M;
}

Mat4c TrigMatrix4::evaluate1(double theta) const {
  std::vector<double> th{theta};
  return evaluate(std::span<const double>(th));
}

TrigMatrix4 TrigMatrix4::directional_derivative(std::span<const double> omega) const {
  TrigMatrix4 out(dim_, strip_width_);
  for (int i = 0; i < 16; ++i) out.e_[i] = e_[i].directional_derivative(omega);
  return out;
}

double TrigMatrix4::max_strip_norm(double sigma) const {
  double w = 0.0;
  for (const auto& p : e_) w = std::max(w, p.strip_norm(sigma));
  return w;
}

int TrigMatrix4::max_mode() const {
  int c = 0;
  for (const auto& p : e_) c = std::max(c, p.cutoff());
  return c;
}

TrigMatrix4 TrigMatrix4::analyze_grid(const std::vector<Mat4c>& values, int cutoff,
                                      double strip_width) {
  const int G = static_cast<int>(values.size());
  TrigMatrix4 out(1, strip_width);
  std::vector<cplx> samples(G);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      for (int g = 0; g < G; ++g) samples[g] = values[g](i, j);
      out.at(i, j) = TrigPoly::analyze(samples, 1, G, cutoff, strip_width);
    }
  return out;
}

TrigMatrix4 form_matrix(const QuadHamiltonian& F) {
  TrigMatrix4 S(F.dim(), F.strip_width());
  for (const auto& [m, p] : F.terms()) {
    std::array<int, 4> e{m.alpha[0], m.alpha[1], m.beta[0], m.beta[1]};
    int i = -1, j = -1;
    for (int v = 0; v < 4; ++v)
      for (int c = 0; c < e[v]; ++c) (i < 0 ? i : j) = v;
    if (i == j) {
      S.at(i, i) += p * cplx(2.0, 0.0);
    } else {
      S.at(i, j) += p;
      S.at(j, i) += p;
    }
  }
  return S;
}

Mat4c form_matrix_at(const QuadHamiltonian& F, std::span<const double> theta) {
  Mat4c S = Mat4c::Zero();
  for (const auto& [m, p] : F.terms()) {
    std::array<int, 4> e{m.alpha[0], m.alpha[1], m.beta[0], m.beta[1]};
    int i = -1, j = -1;
    for (int v = 0; v < 4; ++v)
      for (int c = 0; c < e[v]; ++c) (i < 0 ? i : j) = v;
    cplx val = p.evaluate(theta);
    if (i == j) {
      S(i, i) += 2.0 * val;
    } else {
      S(i, j) += val;
      S(j, i) += val;
    }
  }
  return S;
}

Mat4c flow_matrix_at(const QuadHamiltonian& F, std::span<const double> theta) {
  return complex_E() * form_matrix_at(F, theta);
}

Mat4c flow_matrix_of(const NormalForm& n) {
  QuadHamiltonian h = normal_form_ham(n, 1, 1.0);
  std::vector<double> th{0.0};
  return flow_matrix_at(h, th);
}

GeneratorSeries assemble_generator(const std::vector<QuadHamiltonian>& chis, int grid) {
  GeneratorSeries gen;
  if (chis.empty()) {
    gen.A = TrigMatrix4(1, 1.0);
    return gen;
  }
  const int dim = chis.front().dim();
  if (dim != 1)
    throw std::invalid_argument("assemble_generator: grid assembly implemented for n = 1");
  int maxmode = 0;
  for (const auto& c : chis) maxmode = std::max(maxmode, c.max_mode());
  grid = std::max(grid, 8 * maxmode + 32);

  std::vector<Mat4c> prod(grid), logs(grid);
  for (int g = 0; g < grid; ++g) {
    double th = 2.0 * std::numbers::pi * g / grid;
    std::vector<double> thv{th};
    Mat4c P = Mat4c::Identity();
    for (const auto& c : chis) P *= flow_matrix_at(c, thv).exp();
    prod[g] = P;
    // principal log is safe while the product stays away from eigenvalue -1
    Eigen::ComplexEigenSolver<Mat4c> es(P);
    for (int i = 0; i < 4; ++i)
      if (std::abs(es.eigenvalues()(i) + cplx(1.0, 0.0)) < 1e-6)
        throw std::runtime_error("assemble_generator: eigenvalue at -1, log branch ambiguous");
    logs[g] = P.log();
    gen.sup_norm = std::max(gen.sup_norm, logs[g].cwiseAbs().maxCoeff());
  }
  double sw = chis.front().strip_width();
  gen.A = TrigMatrix4::analyze_grid(logs, grid / 2 - 1, sw);
  // scrub the flat DFT/log noise floor: it is harmless pointwise but the
  // exponentially weighted norms would amplify spurious high modes
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      gen.A.at(i, j).drop_small_modes(1e-12 * std::max(gen.sup_norm, 1e-30), 0.0);
  gen.grid = grid;
  for (int g = 0; g < grid; ++g) {
    double th = 2.0 * std::numbers::pi * g / grid;
    Mat4c R = gen.A.evaluate1(th).exp() - prod[g];
    gen.reconstruction_error = std::max(gen.reconstruction_error, R.cwiseAbs().maxCoeff());
  }
  return gen;
}

Mat4c GeneratorSeries::exp_at(double theta) const {
  return A.evaluate1(theta).exp();
}

double sp_defect(const GeneratorSeries& gen, int samples) {
  Mat4c J = complex_J();
  double worst = 0.0;
  for (int g = 0; g < samples; ++g) {
    double th = 2.0 * std::numbers::pi * g / samples;
    Mat4c Ath = gen.A.evaluate1(th);
    worst = std::max(worst, (Ath.transpose() * J + J * Ath).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace qland
