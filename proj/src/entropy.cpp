#include "focklab/entropy.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace focklab {

double g_function(double x) {
  if (x < 0.0) throw DomainError("g_function: x must be >= 0");
  if (x == 0.0) return 0.0;
  // x·ln(1 + 1/x) + ln(1 + x), stable for both small and large x
  return x * std::log1p(1.0 / x) + std::log1p(x);
}

double entropy_of_weights(const RVec& w) {
  double s = 0.0;
  for (int i = 0; i < w.size(); ++i) {
    double lam = w(i);
    if (lam < kEigClipFloor)
      throw InvalidStateError("entropy: eigenvalue " + std::to_string(lam) +
                              " < -1e-10");
    if (lam <= 0.0) continue;
    s -= lam * std::log(lam);
  }
  return s;
}

namespace {

bool numerically_diagonal(const Mat& m) {
  double off = 0.0;
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i)
      if (i != j) off = std::max(off, std::abs(m(i, j)));
  return off < 1e-14;
}

}  // namespace

double von_neumann_entropy(const DensityOperator& rho) {
  if (rho.matrix.rows() != rho.matrix.cols())
    throw InvalidStateError("entropy: non-square matrix");
  if (numerically_diagonal(rho.matrix))
    return entropy_of_weights(rho.matrix.diagonal().real());
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix, Eigen::EigenvaluesOnly);
  return entropy_of_weights(es.eigenvalues());
}

double relative_entropy(const DensityOperator& rho,
                        const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim())
    throw DomainError("relative_entropy: dimension mismatch");
  // Tr ρ ln ρ
  Eigen::SelfAdjointEigenSolver<Mat> er(rho.matrix, Eigen::EigenvaluesOnly);
  double tr_rho_ln_rho = 0.0;
  for (int i = 0; i < er.eigenvalues().size(); ++i) {
    double lam = er.eigenvalues()(i);
    if (lam < kEigClipFloor)
      throw InvalidStateError("relative_entropy: rho eigenvalue " +
                              std::to_string(lam) + " < -1e-10");
    if (lam > 0.0) tr_rho_ln_rho += lam * std::log(lam);
  }
  // Tr ρ ln σ in σ's eigenbasis
  Eigen::SelfAdjointEigenSolver<Mat> es(sigma.matrix);
  double tr_rho_ln_sigma = 0.0;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    const double s = es.eigenvalues()(k);
    const Vec v = es.eigenvectors().col(k);
    const double w = std::max(0.0, std::real(v.dot(rho.matrix * v)));
    if (s < 1e-14) {
      if (w > 1e-12) return std::numeric_limits<double>::infinity();
      continue;
    }
    tr_rho_ln_sigma += w * std::log(std::max(s, 1e-300));
  }
  return tr_rho_ln_rho - tr_rho_ln_sigma;
}

}  // namespace focklab
