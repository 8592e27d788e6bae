#include "focklab/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace focklab {

namespace {

// Tail of the Poisson(|alpha|^2) photon distribution beyond the cutoff.
double coherent_tail(double alpha_sq, int cutoff) {
  if (alpha_sq == 0.0) return 0.0;
  double lp = -alpha_sq;  // log of the n = 0 weight
  double kept = 0.0;
  for (int n = 0; n <= cutoff; ++n) {
    kept += std::exp(lp);
    lp += std::log(alpha_sq) - std::log(static_cast<double>(n + 1));
  }
  return std::max(0.0, 1.0 - kept);
}

}  // namespace

RMat exp_antisym_tridiag(const RVec& sub, double theta) {
  const int n = static_cast<int>(sub.size()) + 1;
  if (n == 1) return RMat::Ones(1, 1);
  // iG is unitarily equivalent (by diag(i^k)) to the real symmetric
  // tridiagonal S with off-diagonal sub; exp(θG) follows from S's
  // eigendecomposition with a (j-k) mod 4 sign pattern.
  RMat s = RMat::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    s(k, k + 1) = sub(k);
    s(k + 1, k) = sub(k);
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(s);
  const RVec lam = es.eigenvalues();
  const RMat& v = es.eigenvectors();
  RVec c(n), sn(n);
  for (int i = 0; i < n; ++i) {
    c(i) = std::cos(theta * lam(i));
    sn(i) = std::sin(theta * lam(i));
  }
  RMat cm = v * c.asDiagonal() * v.transpose();
  RMat sm = v * sn.asDiagonal() * v.transpose();
  RMat u(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      switch (((j - k) % 4 + 4) % 4) {
        case 0: u(j, k) = cm(j, k); break;
        case 1: u(j, k) = sm(j, k); break;
        case 2: u(j, k) = -cm(j, k); break;
        default: u(j, k) = -sm(j, k); break;
      }
    }
  return u;
}

BeamSplitterUnitary beam_splitter(double eta, int max_total) {
  if (eta < 0.0 || eta > 1.0)
    throw DomainError("beam_splitter: eta must be in [0, 1]");
  if (max_total < 0) throw DomainError("beam_splitter: max_total must be >= 0");
  const double theta = std::atan2(std::sqrt(1.0 - eta), std::sqrt(eta));
  BeamSplitterUnitary bs;
  bs.eta = eta;
  bs.max_total = max_total;
  bs.blocks.reserve(static_cast<std::size_t>(max_total) + 1);
  for (int n = 0; n <= max_total; ++n) {
    RVec sub(n);
    for (int k = 0; k < n; ++k)
      sub(k) = std::sqrt(static_cast<double>(k + 1) * (n - k));
    bs.blocks.push_back(exp_antisym_tridiag(sub, theta));
  }
  return bs;
}

TwoModeState tensor(const FockState& a, const FockState& b) {
  TwoModeState out;
  out.cutoff_a = a.cutoff();
  out.cutoff_b = b.cutoff();
  out.amps = Vec::Zero(a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      out.amps(i * b.dim() + j) = a.amps(i) * b.amps(j);
  return out;
}

TwoModeState apply(const BeamSplitterUnitary& u, const TwoModeState& psi) {
  const int total = psi.cutoff_a + psi.cutoff_b;
  if (u.max_total < total)
    throw DomainError("beam splitter blocks cover totals up to " +
                      std::to_string(u.max_total) + ", state needs " +
                      std::to_string(total));
  TwoModeState out;
  out.cutoff_a = total;
  out.cutoff_b = total;
  out.amps = Vec::Zero((total + 1) * (total + 1));
  for (int n = 0; n <= total; ++n) {
    Vec x = Vec::Zero(n + 1);
    bool any = false;
    for (int k = 0; k <= n; ++k) {
      if (k <= psi.cutoff_a && n - k <= psi.cutoff_b) {
        x(k) = psi.at(k, n - k);
        any = any || x(k) != 0.0;
      }
    }
    if (!any) continue;
    Vec y = u.block(n).cast<Complex>() * x;
    for (int k = 0; k <= n; ++k) out.at(k, n - k) = y(k);
  }
  return out;
}

TwoModeDensity apply(const BeamSplitterUnitary& u, const TwoModeDensity& rho) {
  const int total = rho.cutoff_a + rho.cutoff_b;
  if (u.max_total < total)
    throw DomainError("beam splitter blocks cover totals up to " +
                      std::to_string(u.max_total) + ", state needs " +
                      std::to_string(total));
  TwoModeDensity out;
  out.cutoff_a = total;
  out.cutoff_b = total;
  const int db_in = rho.dim_b();
  const int db_out = total + 1;
  out.matrix = Mat::Zero(db_out * db_out, db_out * db_out);
  // gather per block pair, conjugate, scatter
  for (int n = 0; n <= total; ++n) {
    for (int np = 0; np <= total; ++np) {
      Mat m = Mat::Zero(n + 1, np + 1);
      bool any = false;
      for (int k = 0; k <= n; ++k) {
        if (k > rho.cutoff_a || n - k > rho.cutoff_b) continue;
        for (int kp = 0; kp <= np; ++kp) {
          if (kp > rho.cutoff_a || np - kp > rho.cutoff_b) continue;
          const Complex val =
              rho.matrix(k * db_in + (n - k), kp * db_in + (np - kp));
          m(k, kp) = val;
          any = any || val != 0.0;
        }
      }
      if (!any) continue;
      Mat res = u.block(n).cast<Complex>() * m *
                u.block(np).transpose().cast<Complex>();
      for (int k = 0; k <= n; ++k)
        for (int kp = 0; kp <= np; ++kp)
          out.matrix(k * db_out + (n - k), kp * db_out + (np - kp)) = res(k, kp);
    }
  }
  return out;
}

SingleModeUnitary rotation(double theta, int cutoff) {
  if (cutoff < 0) throw DomainError("rotation: cutoff must be >= 0");
  SingleModeUnitary u;
  u.kind = SingleModeUnitary::Kind::Rotation;
  u.matrix = Mat::Zero(cutoff + 1, cutoff + 1);
  for (int n = 0; n <= cutoff; ++n)
    u.matrix(n, n) = std::exp(Complex(0.0, -n * theta));
  return u;
}

double squeezed_vacuum_tail(double r, int cutoff) {
  const double t = std::tanh(r);
  double amp2 = 1.0 / std::cosh(r);  // |ψ_0|²
  double kept = 0.0;
  for (int m = 0; 2 * m <= cutoff; ++m) {
    kept += amp2;
    amp2 *= t * t * (2.0 * m + 1.0) / (2.0 * m + 2.0);
  }
  return std::max(0.0, 1.0 - kept);
}

FockState squeezed_vacuum(double r, int cutoff) {
  if (cutoff < 0) throw DomainError("squeezed_vacuum: cutoff must be >= 0");
  const double tail = squeezed_vacuum_tail(r, cutoff);
  if (tail > 1e-6)
    throw TruncationError("squeezed_vacuum: tail mass " + std::to_string(tail) +
                          " beyond cutoff " + std::to_string(cutoff) +
                          " exceeds 1e-6 (r = " + std::to_string(r) + ")");
  FockState s;
  s.amps = Vec::Zero(cutoff + 1);
  const double t = std::tanh(r);
  double amp = 1.0 / std::sqrt(std::cosh(r));
  for (int m = 0; 2 * m <= cutoff; ++m) {
    s.amps(2 * m) = amp;
    amp *= -t * std::sqrt((2.0 * m + 1.0) / (2.0 * m + 2.0));
  }
  s.norm_deficit = tail;
  s.amps /= s.amps.norm();
  return s;
}

SingleModeUnitary squeezing(double r, int cutoff) {
  if (cutoff < 0) throw DomainError("squeezing: cutoff must be >= 0");
  const double tail = squeezed_vacuum_tail(r, cutoff);
  if (tail > 1e-6)
    throw TruncationError("squeezing: truncation defect " +
                          std::to_string(tail) + " at cutoff " +
                          std::to_string(cutoff) + " exceeds 1e-6 (r = " +
                          std::to_string(r) + ")");
  // (r/2)(a² - a†²) couples n to n±2 only, so the even and odd sectors
  // exponentiate independently as antisymmetric tridiagonals.
  SingleModeUnitary u;
  u.kind = SingleModeUnitary::Kind::Squeezing;
  u.matrix = Mat::Zero(cutoff + 1, cutoff + 1);
  for (int parity = 0; parity <= std::min(1, cutoff); ++parity) {
    const int count = (cutoff - parity) / 2 + 1;
    RVec sub(count - 1);
    for (int m = 0; m + 1 < count; ++m) {
      const double n0 = 2.0 * m + parity;
      sub(m) = -0.5 * std::sqrt((n0 + 1.0) * (n0 + 2.0));
    }
    RMat blk = exp_antisym_tridiag(sub, r);
    for (int a = 0; a < count; ++a)
      for (int b = 0; b < count; ++b)
        u.matrix(2 * a + parity, 2 * b + parity) = blk(a, b);
  }
  return u;
}

SingleModeUnitary displacement(Complex alpha, int cutoff) {
  if (cutoff < 0) throw DomainError("displacement: cutoff must be >= 0");
  const double tail = coherent_tail(std::norm(alpha), cutoff);
  if (tail > 1e-6)
    throw TruncationError("displacement: truncation defect " +
                          std::to_string(tail) + " at cutoff " +
                          std::to_string(cutoff) + " exceeds 1e-6 (|alpha| = " +
                          std::to_string(std::abs(alpha)) + ")");
  const int n = cutoff + 1;
  // exp(A), A = αa† - α*a anti-Hermitian: diagonalize H = iA.
  Mat h = Mat::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    const double root = std::sqrt(static_cast<double>(k + 1));
    h(k + 1, k) = Complex(0, 1) * alpha * root;
    h(k, k + 1) = std::conj(h(k + 1, k));
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec phases(n);
  for (int k = 0; k < n; ++k)
    phases(k) = std::exp(Complex(0.0, -es.eigenvalues()(k)));
  SingleModeUnitary u;
  u.kind = SingleModeUnitary::Kind::Displacement;
  u.matrix = es.eigenvectors() * phases.asDiagonal() *
             es.eigenvectors().adjoint();
  return u;
}

FockState apply(const SingleModeUnitary& u, const FockState& psi) {
  if (u.matrix.cols() != psi.amps.size())
    throw DomainError("apply: unitary/state dimension mismatch");
  FockState out;
  out.amps = u.matrix * psi.amps;
  out.norm_deficit = psi.norm_deficit;
  return out;
}

DensityOperator apply(const SingleModeUnitary& u, const DensityOperator& rho) {
  if (u.matrix.cols() != rho.matrix.rows())
    throw DomainError("apply: unitary/state dimension mismatch");
  DensityOperator out;
  out.matrix = u.matrix * rho.matrix * u.matrix.adjoint();
  out.trace_deficit = rho.trace_deficit;
  return out;
}

FockState rotate(const FockState& psi, double theta) {
  FockState out = psi;
  for (int n = 0; n < out.dim(); ++n)
    out.amps(n) *= std::exp(Complex(0.0, -n * theta));
  return out;
}

DensityOperator rotate(const DensityOperator& rho, double theta) {
  DensityOperator out = rho;
  for (int m = 0; m < out.dim(); ++m)
    for (int n = 0; n < out.dim(); ++n)
      out.matrix(m, n) *= std::exp(Complex(0.0, -(m - n) * theta));
  return out;
}

FockState reflect(const FockState& psi, double theta) {
  FockState out = psi;
  for (int n = 0; n < out.dim(); ++n)
    out.amps(n) =
        std::exp(Complex(0.0, -2.0 * n * theta)) * std::conj(psi.amps(n));
  return out;
}

DensityOperator reflect(const DensityOperator& rho, double theta) {
  DensityOperator out = rho;
  for (int m = 0; m < out.dim(); ++m)
    for (int n = 0; n < out.dim(); ++n)
      out.matrix(m, n) = std::exp(Complex(0.0, -2.0 * (m - n) * theta)) *
                         std::conj(rho.matrix(m, n));
  return out;
}

RMat tms_block(double r, int d, int extent) {
  if (d < 0 || extent < 1) throw DomainError("tms_block: bad block shape");
  RVec sub(extent - 1);
  for (int j = 0; j + 1 < extent; ++j)
    sub(j) = std::sqrt(static_cast<double>(j + 1) * (d + j + 1));
  return exp_antisym_tridiag(sub, r);
}

TwoModeSqueezer two_mode_squeezer(double gain, int cutoff) {
  if (gain < 1.0) throw DomainError("two_mode_squeezer: gain must be >= 1");
  if (cutoff < 0) throw DomainError("two_mode_squeezer: cutoff must be >= 0");
  // two-mode squeezed-vacuum tail beyond the cutoff: x^{N+1}, x = 1 - 1/G
  const double x = 1.0 - 1.0 / gain;
  const double tail = (x == 0.0) ? 0.0 : std::pow(x, cutoff + 1);
  if (tail > 1e-6)
    throw TruncationError("two_mode_squeezer: truncation defect " +
                          std::to_string(tail) + " at cutoff " +
                          std::to_string(cutoff) + " exceeds 1e-6 (G = " +
                          std::to_string(gain) + ")");
  TwoModeSqueezer u;
  u.gain = gain;
  u.cutoff = cutoff;
  const double r = std::acosh(std::sqrt(gain));
  u.blocks.reserve(static_cast<std::size_t>(cutoff) + 1);
  for (int d = 0; d <= cutoff; ++d)
    u.blocks.push_back(tms_block(r, d, cutoff - d + 1));
  return u;
}

TwoModeState apply(const TwoModeSqueezer& u, const TwoModeState& psi) {
  if (psi.cutoff_a > u.cutoff || psi.cutoff_b > u.cutoff)
    throw DomainError("two_mode_squeezer: state cutoff exceeds unitary cutoff");
  TwoModeState out;
  out.cutoff_a = u.cutoff;
  out.cutoff_b = u.cutoff;
  out.amps = Vec::Zero((u.cutoff + 1) * (u.cutoff + 1));
  for (int d = -psi.cutoff_b; d <= psi.cutoff_a; ++d) {
    const int ad = std::abs(d);
    const RMat& blk = u.block(ad);
    const int extent = static_cast<int>(blk.rows());
    Vec x = Vec::Zero(extent);
    bool any = false;
    for (int j = 0; j < extent; ++j) {
      const int ia = d >= 0 ? d + j : j;
      const int ib = d >= 0 ? j : ad + j;
      if (ia <= psi.cutoff_a && ib <= psi.cutoff_b) {
        x(j) = psi.at(ia, ib);
        any = any || x(j) != 0.0;
      }
    }
    if (!any) continue;
    Vec y = blk.cast<Complex>() * x;
    for (int j = 0; j < extent; ++j) {
      const int ia = d >= 0 ? d + j : j;
      const int ib = d >= 0 ? j : ad + j;
      out.at(ia, ib) += y(j);
    }
  }
  return out;
}

}  // namespace focklab
