#include "focklab/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace focklab {

FockState FockState::resized(int new_cutoff) const {
  if (new_cutoff < 0) throw DomainError("resized: cutoff must be >= 0");
  const int n = new_cutoff + 1;
  FockState out;
  out.amps = Vec::Zero(n);
  const int copy = std::min(n, dim());
  out.amps.head(copy) = amps.head(copy);
  out.norm_deficit = norm_deficit;
  if (n < dim()) {
    const double kept = out.amps.squaredNorm();
    out.norm_deficit += 1.0 - kept;
    if (kept <= 0.0) throw DomainError("resized: all amplitude mass cut away");
    out.amps /= std::sqrt(kept);
  }
  return out;
}

DensityOperator DensityOperator::resized(int new_cutoff) const {
  if (new_cutoff < 0) throw DomainError("resized: cutoff must be >= 0");
  const int n = new_cutoff + 1;
  DensityOperator out;
  out.matrix = Mat::Zero(n, n);
  const int copy = std::min(n, dim());
  out.matrix.topLeftCorner(copy, copy) = matrix.topLeftCorner(copy, copy);
  out.trace_deficit = trace_deficit;
  if (n < dim()) {
    const double kept = out.matrix.trace().real();
    if (kept <= 0.0) throw DomainError("resized: all trace mass cut away");
    out.trace_deficit += matrix.trace().real() - kept;
    out.matrix /= kept;
  }
  return out;
}

FockState make_fock(int n, int cutoff) {
  if (cutoff < 0) throw DomainError("make_fock: cutoff must be >= 0");
  if (n < 0 || n > cutoff)
    throw DomainError("make_fock: n=" + std::to_string(n) +
                      " outside [0, cutoff=" + std::to_string(cutoff) + "]");
  FockState s;
  s.amps = Vec::Zero(cutoff + 1);
  s.amps(n) = 1.0;
  return s;
}

FockState make_coherent(Complex alpha, int cutoff) {
  if (cutoff < 0) throw DomainError("make_coherent: cutoff must be >= 0");
  const double a2 = std::norm(alpha);
  FockState s;
  s.amps = Vec::Zero(cutoff + 1);
  // log-scaled recurrence keeps large |α| finite before normalization
  // amp_n = e^{-|α|²/2} α^n / √(n!)
  Complex amp = std::exp(-0.5 * a2);
  for (int n = 0; n <= cutoff; ++n) {
    s.amps(n) = amp;
    amp *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  const double kept = s.amps.squaredNorm();
  s.norm_deficit = std::max(0.0, 1.0 - kept);
  if (s.norm_deficit > 1e-4)
    throw TruncationError("make_coherent: tail mass " +
                          std::to_string(s.norm_deficit) +
                          " beyond cutoff exceeds 1e-4 (|alpha|^2 = " +
                          std::to_string(a2) + ")");
  s.amps /= std::sqrt(kept);
  return s;
}

FockState state_from_amplitudes(Vec amps, double norm_deficit) {
  if (amps.size() == 0) throw DomainError("state_from_amplitudes: empty vector");
  const double n2 = amps.squaredNorm();
  if (n2 <= 0.0) throw DomainError("state_from_amplitudes: zero norm");
  FockState s;
  s.amps = std::move(amps);
  s.amps /= std::sqrt(n2);
  s.norm_deficit = norm_deficit;
  return s;
}

DensityOperator make_thermal(double nbar, int cutoff) {
  if (nbar < 0) throw DomainError("make_thermal: nbar must be >= 0");
  if (cutoff < 0) throw DomainError("make_thermal: cutoff must be >= 0");
  DensityOperator rho;
  rho.matrix = Mat::Zero(cutoff + 1, cutoff + 1);
  if (nbar == 0.0) {
    rho.matrix(0, 0) = 1.0;
    return rho;
  }
  const double q = nbar / (nbar + 1.0);
  double w = 1.0 / (nbar + 1.0);
  double kept = 0.0;
  for (int n = 0; n <= cutoff; ++n) {
    rho.matrix(n, n) = w;
    kept += w;
    w *= q;
  }
  rho.trace_deficit = std::max(0.0, 1.0 - kept);
  rho.matrix /= kept;
  return rho;
}

DensityOperator to_density(const FockState& psi) {
  DensityOperator rho;
  rho.matrix = psi.amps * psi.amps.adjoint();
  rho.trace_deficit = psi.norm_deficit;
  return rho;
}

DensityOperator density_from_matrix(Mat m, double trace_deficit) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DomainError("density_from_matrix: matrix must be square, nonempty");
  DensityOperator rho;
  rho.matrix = 0.5 * (m + m.adjoint().eval());
  rho.trace_deficit = trace_deficit;
  return rho;
}

void check_density(const DensityOperator& rho) {
  const Mat& m = rho.matrix;
  if (m.rows() != m.cols())
    throw InvalidStateError("density operator is not square");
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12)
    throw InvalidStateError("density operator not Hermitian (residual " +
                            std::to_string(herm) + ")");
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > 1e-10)
    throw InvalidStateError("trace " + std::to_string(tr) +
                            " deviates from 1 beyond 1e-10");
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < kEigClipFloor)
    throw InvalidStateError("density operator has eigenvalue " +
                            std::to_string(min_eig) + " < -1e-10");
}

Complex overlap(const FockState& a, const FockState& b) {
  const int n = std::min(a.dim(), b.dim());
  return a.amps.head(n).dot(b.amps.head(n));  // Eigen dot conjugates the left
}

double fidelity_pure(const DensityOperator& rho, const FockState& psi) {
  if (rho.dim() != psi.dim())
    throw DomainError("fidelity_pure: dimension mismatch");
  return std::real(psi.amps.dot(rho.matrix * psi.amps));
}

double purity(const DensityOperator& rho) {
  return (rho.matrix * rho.matrix).trace().real();
}

Complex expect_a(const DensityOperator& rho) {
  // Tr[ρ a] = Σ_n √(n+1) ρ(n+1, n)
  Complex acc = 0.0;
  for (int n = 0; n + 1 < rho.dim(); ++n)
    acc += std::sqrt(static_cast<double>(n + 1)) * rho.matrix(n + 1, n);
  return acc;
}

Complex expect_a2(const DensityOperator& rho) {
  // Tr[ρ a²] = Σ_n √((n+1)(n+2)) ρ(n+2, n)
  Complex acc = 0.0;
  for (int n = 0; n + 2 < rho.dim(); ++n)
    acc += std::sqrt(static_cast<double>(n + 1) * (n + 2)) *
           rho.matrix(n + 2, n);
  return acc;
}

double mean_photon(const DensityOperator& rho) {
  double acc = 0.0;
  for (int n = 0; n < rho.dim(); ++n)
    acc += n * std::real(rho.matrix(n, n));
  return acc;
}

double mean_photon(const FockState& psi) {
  double acc = 0.0;
  for (int n = 0; n < psi.dim(); ++n) acc += n * std::norm(psi.amps(n));
  return acc;
}

PhaseSpaceMoments moments(const DensityOperator& rho) {
  const Complex ea = expect_a(rho);
  const Complex ea2 = expect_a2(rho);
  const double en = mean_photon(rho);
  PhaseSpaceMoments m;
  m.mean << M_SQRT2 * ea.real(), M_SQRT2 * ea.imag();
  // <x²> = Re<a²> + <n> + ½ ; <p²> = -Re<a²> + <n> + ½ ; sym<xp> = Im<a²>
  const double xx = ea2.real() + en + 0.5 - m.mean(0) * m.mean(0);
  const double pp = -ea2.real() + en + 0.5 - m.mean(1) * m.mean(1);
  const double xp = ea2.imag() - m.mean(0) * m.mean(1);
  m.cov << xx, xp, xp, pp;
  return m;
}

PhaseSpaceMoments moments(const FockState& psi) { return moments(to_density(psi)); }

double trace_norm_hermitian(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  const int n = std::max(a.dim(), b.dim());
  Mat d = Mat::Zero(n, n);
  d.topLeftCorner(a.dim(), a.dim()) = a.matrix;
  d.topLeftCorner(b.dim(), b.dim()) -= b.matrix;
  return 0.5 * trace_norm_hermitian(d);
}

double phase_free_distance(const Vec& a, const Vec& b) {
  const int n = std::min(a.size(), b.size());
  Complex ov = a.head(n).dot(b.head(n));
  const double d2 =
      a.squaredNorm() + b.squaredNorm() - 2.0 * std::abs(ov);
  return std::sqrt(std::max(0.0, d2));
}

RVec density_spectrum(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix, Eigen::EigenvaluesOnly);
  RVec lam = es.eigenvalues();
  for (int i = 0; i < lam.size(); ++i) {
    if (lam(i) < kEigClipFloor)
      throw InvalidStateError("density eigenvalue " + std::to_string(lam(i)) +
                              " < -1e-10");
    if (lam(i) < 0.0) lam(i) = 0.0;
  }
  return lam;
}

Mat annihilation_matrix(int cutoff) {
  if (cutoff < 0) throw DomainError("annihilation_matrix: cutoff must be >= 0");
  Mat a = Mat::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n)
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

TwoModeDensity tensor(const DensityOperator& a, const DensityOperator& b) {
  TwoModeDensity out;
  out.cutoff_a = a.cutoff();
  out.cutoff_b = b.cutoff();
  const int da = a.dim(), db = b.dim();
  out.matrix = Mat::Zero(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int k = 0; k < da; ++k)
      out.matrix.block(i * db, k * db, db, db) = a.matrix(i, k) * b.matrix;
  return out;
}

DensityOperator partial_trace_second(const TwoModeDensity& rho2) {
  const int da = rho2.dim_a(), db = rho2.dim_b();
  if (rho2.matrix.rows() != da * db || rho2.matrix.cols() != da * db)
    throw DomainError("partial_trace_second: matrix size does not match cutoffs");
  DensityOperator out;
  out.matrix = Mat::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int k = 0; k < da; ++k) {
      Complex acc = 0.0;
      for (int j = 0; j < db; ++j) acc += rho2.matrix(i * db + j, k * db + j);
      out.matrix(i, k) = acc;
    }
  return out;
}

DensityOperator partial_trace_first(const TwoModeDensity& rho2) {
  const int da = rho2.dim_a(), db = rho2.dim_b();
  if (rho2.matrix.rows() != da * db || rho2.matrix.cols() != da * db)
    throw DomainError("partial_trace_first: matrix size does not match cutoffs");
  DensityOperator out;
  out.matrix = Mat::Zero(db, db);
  for (int j = 0; j < db; ++j)
    for (int l = 0; l < db; ++l) {
      Complex acc = 0.0;
      for (int i = 0; i < da; ++i) acc += rho2.matrix(i * db + j, i * db + l);
      out.matrix(j, l) = acc;
    }
  return out;
}

}  // namespace focklab
