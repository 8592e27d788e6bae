#include "focklab/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace focklab {
namespace {

constexpr double kEnvEigFloor = 1e-14;
constexpr double kBlockBoundaryTol = 1e-10;
constexpr int kBlockExtentCap = 16384;

void support_range(const Vec& v, int& lo, int& hi) {
  const double tol = 1e-14 * std::max(1.0, v.cwiseAbs().maxCoeff());
  lo = 0;
  hi = static_cast<int>(v.size()) - 1;
  while (lo < hi && std::abs(v(lo)) <= tol) ++lo;
  while (hi > lo && std::abs(v(hi)) <= tol) --hi;
}

bool matrix_number_diagonal(const Mat& m) {
  double off = 0.0, diag = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const double a = std::abs(m(i, j));
      if (i == j)
        diag = std::max(diag, a);
      else
        off = std::max(off, a);
    }
  return off <= 1e-12 * std::max(1.0, diag);
}

// Truncated, renormalized amplitude vector of a pure environment.
Vec realize_pure_amps(const Vec& amps, int cutoff, double& deficit) {
  Vec out = Vec::Zero(cutoff + 1);
  const int copy = std::min<int>(cutoff + 1, static_cast<int>(amps.size()));
  out.head(copy) = amps.head(copy);
  const double kept = out.squaredNorm();
  if (kept <= 0.0)
    throw TruncationError("environment: all amplitude mass beyond cutoff");
  deficit = std::max(0.0, 1.0 - kept);
  out /= std::sqrt(kept);
  return out;
}

}  // namespace

// ---- Environment -------------------------------------------------------

Environment Environment::fock(int n) {
  if (n < 0) throw DomainError("Environment::fock: n must be >= 0");
  Environment e;
  e.kind = Kind::Fock;
  e.fock_n = n;
  return e;
}

Environment Environment::thermal(double nbar) {
  if (nbar < 0.0) throw DomainError("Environment::thermal: nbar must be >= 0");
  Environment e;
  e.kind = Kind::Thermal;
  e.thermal_nbar = nbar;
  return e;
}

Environment Environment::diagonal(RVec populations) {
  if (populations.size() == 0)
    throw DomainError("Environment::diagonal: empty population vector");
  double sum = 0.0;
  for (int i = 0; i < populations.size(); ++i) {
    if (populations(i) < -1e-12)
      throw DomainError("Environment::diagonal: negative population");
    populations(i) = std::max(populations(i), 0.0);
    sum += populations(i);
  }
  if (std::abs(sum - 1.0) > 1e-8)
    throw DomainError("Environment::diagonal: populations sum to " +
                      std::to_string(sum) + ", expected 1");
  populations /= sum;
  Environment e;
  e.kind = Kind::Diagonal;
  e.diag_p = std::move(populations);
  return e;
}

Environment Environment::pure(Vec amplitudes) {
  if (amplitudes.size() == 0)
    throw DomainError("Environment::pure: empty amplitude vector");
  const double n2 = amplitudes.squaredNorm();
  if (n2 <= 0.0) throw DomainError("Environment::pure: zero norm");
  amplitudes /= std::sqrt(n2);
  Environment e;
  e.kind = Kind::Pure;
  e.pure_amps = std::move(amplitudes);
  return e;
}

Environment Environment::mixed(Mat rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0)
    throw DomainError("Environment::mixed: matrix must be square, nonempty");
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-8)
    throw DomainError("Environment::mixed: trace " + std::to_string(tr) +
                      " differs from 1");
  Environment e;
  e.kind = Kind::Mixed;
  e.mixed_rho = 0.5 * (rho + rho.adjoint().eval());
  e.mixed_rho /= e.mixed_rho.trace().real();
  return e;
}

bool Environment::number_diagonal() const {
  switch (kind) {
    case Kind::Fock:
    case Kind::Thermal:
    case Kind::Diagonal:
      return true;
    case Kind::Pure: {
      const double top = pure_amps.cwiseAbs().maxCoeff();
      int nonzero = 0;
      for (int i = 0; i < pure_amps.size(); ++i)
        if (std::abs(pure_amps(i)) > 1e-12 * top) ++nonzero;
      return nonzero <= 1;
    }
    case Kind::Mixed:
      return matrix_number_diagonal(mixed_rho);
  }
  return false;
}

int Environment::default_cutoff(double tail_tol) const {
  switch (kind) {
    case Kind::Fock:
      return fock_n;
    case Kind::Thermal: {
      if (thermal_nbar <= 0.0) return 0;
      const double q = thermal_nbar / (thermal_nbar + 1.0);
      // tail beyond N is q^{N+1}
      const double n = std::ceil(std::log(tail_tol) / std::log(q)) - 1.0;
      return std::clamp(static_cast<int>(n), 0, 100000);
    }
    case Kind::Diagonal: {
      int hi = static_cast<int>(diag_p.size()) - 1;
      while (hi > 0 && diag_p(hi) <= tail_tol) --hi;
      return hi;
    }
    case Kind::Pure: {
      int hi = static_cast<int>(pure_amps.size()) - 1;
      while (hi > 0 && std::norm(pure_amps(hi)) <= tail_tol) --hi;
      return hi;
    }
    case Kind::Mixed: {
      int hi = static_cast<int>(mixed_rho.rows()) - 1;
      while (hi > 0 && mixed_rho(hi, hi).real() <= tail_tol) --hi;
      return hi;
    }
  }
  return 0;
}

DensityOperator Environment::realize(int cutoff) const {
  if (cutoff < 0) throw DomainError("Environment::realize: cutoff must be >= 0");
  const int dim = cutoff + 1;
  switch (kind) {
    case Kind::Fock: {
      if (fock_n > cutoff)
        throw TruncationError("environment |" + std::to_string(fock_n) +
                              "> does not fit below cutoff " +
                              std::to_string(cutoff));
      DensityOperator rho;
      rho.matrix = Mat::Zero(dim, dim);
      rho.matrix(fock_n, fock_n) = 1.0;
      return rho;
    }
    case Kind::Thermal:
      return make_thermal(thermal_nbar, cutoff);
    case Kind::Diagonal: {
      DensityOperator rho;
      rho.matrix = Mat::Zero(dim, dim);
      double kept = 0.0;
      for (int i = 0; i < std::min<int>(dim, diag_p.size()); ++i) {
        rho.matrix(i, i) = diag_p(i);
        kept += diag_p(i);
      }
      if (kept <= 0.0)
        throw TruncationError("environment: all population beyond cutoff");
      rho.matrix /= kept;
      rho.trace_deficit = std::max(0.0, 1.0 - kept);
      return rho;
    }
    case Kind::Pure: {
      double deficit = 0.0;
      const Vec psi = realize_pure_amps(pure_amps, cutoff, deficit);
      DensityOperator rho;
      rho.matrix = psi * psi.adjoint();
      rho.trace_deficit = deficit;
      return rho;
    }
    case Kind::Mixed: {
      DensityOperator rho;
      rho.matrix = Mat::Zero(dim, dim);
      const int copy = std::min<int>(dim, static_cast<int>(mixed_rho.rows()));
      rho.matrix.topLeftCorner(copy, copy) =
          mixed_rho.topLeftCorner(copy, copy);
      const double kept = rho.matrix.trace().real();
      if (kept <= 0.0)
        throw TruncationError("environment: all trace mass beyond cutoff");
      rho.matrix /= kept;
      rho.trace_deficit = std::max(0.0, 1.0 - kept);
      check_density(rho);
      return rho;
    }
  }
  throw DomainError("Environment::realize: unknown kind");
}

// ---- ChannelSpec ---------------------------------------------------------

ChannelSpec ChannelSpec::attenuator(double eta, Environment env,
                                    ChannelConfig cfg) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw DomainError("attenuator: eta must be in (0, 1], got " +
                      std::to_string(eta));
  ChannelSpec s;
  s.kind = Kind::Attenuator;
  s.eta = eta;
  s.environment = std::move(env);
  s.config = cfg;
  return s;
}

ChannelSpec ChannelSpec::amplifier(double gain, Environment env,
                                   ChannelConfig cfg) {
  if (!(gain >= 1.0))
    throw DomainError("amplifier: gain must be >= 1, got " +
                      std::to_string(gain));
  ChannelSpec s;
  s.kind = Kind::Amplifier;
  s.gain = gain;
  s.environment = std::move(env);
  s.config = cfg;
  return s;
}

// ---- Channel -------------------------------------------------------------

Channel::Channel(ChannelSpec spec) : spec_(std::move(spec)) {
  const ChannelConfig& cfg = spec_.config;
  if (cfg.output_tail_tol <= 0.0)
    throw DomainError("channel: output_tail_tol must be > 0");
  if (cfg.output_cap < 1) throw DomainError("channel: output_cap must be >= 1");
  if (spec_.kind == ChannelSpec::Kind::Attenuator) {
    if (!(spec_.eta > 0.0 && spec_.eta <= 1.0))
      throw DomainError("channel: eta must be in (0, 1]");
  } else if (!(spec_.gain >= 1.0)) {
    throw DomainError("channel: gain must be >= 1");
  }

  env_cutoff_ = cfg.env_cutoff >= 0 ? cfg.env_cutoff
                                    : spec_.environment.default_cutoff();
  env_rho_ = spec_.environment.realize(env_cutoff_);
  env_nbar_ = mean_photon(env_rho_);
  env_diag_basis_ = spec_.environment.number_diagonal();

  if (env_diag_basis_) {
    for (int n = 0; n <= env_cutoff_; ++n) {
      const double p = env_rho_.matrix(n, n).real();
      if (p <= kEnvEigFloor) continue;
      EnvVec v;
      v.weight = p;
      v.amps = Vec::Zero(env_cutoff_ + 1);
      v.amps(n) = 1.0;
      v.lo = v.hi = n;
      env_vecs_.push_back(std::move(v));
    }
  } else if (spec_.environment.kind == Environment::Kind::Pure) {
    double deficit = 0.0;
    EnvVec v;
    v.amps = realize_pure_amps(spec_.environment.pure_amps, env_cutoff_,
                               deficit);
    v.weight = 1.0;
    support_range(v.amps, v.lo, v.hi);
    env_vecs_.push_back(std::move(v));
  } else {
    Eigen::SelfAdjointEigenSolver<Mat> es(env_rho_.matrix);
    if (es.info() != Eigen::Success)
      throw InvalidStateError("channel: environment eigendecomposition failed");
    for (int i = es.eigenvalues().size() - 1; i >= 0; --i) {
      const double w = es.eigenvalues()(i);
      if (w <= kEnvEigFloor) continue;
      EnvVec v;
      v.weight = w;
      v.amps = es.eigenvectors().col(i);
      support_range(v.amps, v.lo, v.hi);
      env_vecs_.push_back(std::move(v));
    }
  }
  if (env_vecs_.empty())
    throw InvalidStateError("channel: environment has no spectral weight");
}

int Channel::output_cutoff_for(int input_cutoff) const {
  if (input_cutoff < 0)
    throw DomainError("output_cutoff_for: cutoff must be >= 0");
  if (spec_.kind == ChannelSpec::Kind::Attenuator)
    return input_cutoff + env_cutoff_;
  const double mean = spec_.gain * (input_cutoff + env_cutoff_ + 1.0);
  const int guess = static_cast<int>(std::ceil(mean + 10.0));
  return std::clamp(guess, input_cutoff + env_cutoff_ + 8,
                    spec_.config.output_cap);
}

std::shared_ptr<const Channel::BsBlocks> Channel::bs_blocks(
    int max_total) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (!bs_cache_ || bs_cache_->max_total < max_total) {
    auto fresh = std::make_shared<BsBlocks>();
    fresh->max_total = max_total;
    fresh->blocks = beam_splitter(spec_.eta, max_total).blocks;
    bs_cache_ = std::move(fresh);
  }
  return bs_cache_;
}

// Adds weight * Σ_q w_q Σ_k (B_k ψ)(B_k ψ)† to acc, exploiting total photon
// number conservation: column k of the per-environment-vector matrix C holds
// the (unnormalized) conditional state after detecting k photons in the
// ancilla.
void Channel::accumulate_attenuator(const Vec& amps, int lo, int hi,
                                    double weight, const BsBlocks& bs,
                                    Mat& acc) const {
  const int n_out = static_cast<int>(acc.rows()) - 1;
  Mat c(n_out + 1, n_out + 1);
  Vec x, y;
  for (const EnvVec& env : env_vecs_) {
    const double w = weight * env.weight;
    const int nmin = lo + env.lo;
    const int nmax = hi + env.hi;
    c.setZero();
    for (int n = nmin; n <= nmax && n <= n_out; ++n) {
      const int k0 = std::max(lo, n - env.hi);
      const int k1 = std::min(hi, n - env.lo);
      if (k1 < k0) continue;
      x = Vec::Zero(n + 1);
      for (int k = k0; k <= k1; ++k) x(k) = amps(k) * env.amps(n - k);
      y.noalias() = bs.blocks[static_cast<std::size_t>(n)] * x;
      for (int j = 0; j <= n; ++j) c(j, n - j) = y(j);
    }
    for (int k = 0; k <= n_out; ++k) {
      const int j0 = std::max(0, nmin - k);
      const int j1 = std::min(n_out, nmax - k);
      if (j1 < j0) continue;
      const int len = j1 - j0 + 1;
      auto seg = c.col(k).segment(j0, len);
      acc.block(j0, j0, len, len).noalias() += w * seg * seg.adjoint();
    }
  }
}

Mat Channel::run_attenuator(const std::vector<std::pair<Vec, double>>& inputs,
                            int n_in) const {
  const int n_out = n_in + env_cutoff_;
  const auto bs = bs_blocks(n_out);
  Mat acc = Mat::Zero(n_out + 1, n_out + 1);
  for (const auto& [amps, w] : inputs) {
    int lo = 0, hi = 0;
    support_range(amps, lo, hi);
    accumulate_attenuator(amps, lo, hi, w, *bs, acc);
  }
  return acc;
}

Mat Channel::run_amplifier(const std::vector<std::pair<Vec, double>>& inputs,
                           int n_in, int n_out, double& escaped) const {
  const double r = std::acosh(std::sqrt(spec_.gain));
  const int d_span = std::max(n_in, env_cutoff_);
  const int col_dim = n_out + env_cutoff_ + 1;
  const int cmax = std::max(n_in, env_cutoff_);

  // Per-|d| blocks, extended until the boundary rows are numerically empty on
  // every used column; the exponential of the truncated generator is exactly
  // orthogonal, so reflection artifacts do not show up in the trace and have
  // to be excluded by extent instead.
  std::vector<RMat> blocks(static_cast<std::size_t>(d_span) + 1);
  for (int d = 0; d <= d_span; ++d) {
    int extent = std::max(n_out + 2 + std::max(8, n_out / 4), cmax + 3);
    for (;;) {
      blocks[static_cast<std::size_t>(d)] = tms_block(r, d, extent);
      const RMat& b = blocks[static_cast<std::size_t>(d)];
      const int ccheck = std::min(cmax, extent - 1);
      double boundary = 0.0;
      for (int c = 0; c <= ccheck; ++c)
        boundary = std::max(
            boundary, std::max(std::abs(b(extent - 1, c)),
                               std::abs(b(extent - 2, c))));
      if (boundary <= kBlockBoundaryTol) break;
      if (extent >= kBlockExtentCap)
        throw TruncationError(
            "amplifier: gain spreads past the block extent cap; reduce the "
            "gain or the input cutoff");
      extent = std::min(2 * extent, kBlockExtentCap);
    }
  }

  Mat acc = Mat::Zero(n_out + 1, n_out + 1);
  Mat c(n_out + 1, col_dim);
  Vec x, y;
  double total_in = 0.0;
  for (const auto& [amps, w_in] : inputs) {
    int i0 = 0, i1 = 0;
    support_range(amps, i0, i1);
    total_in += w_in;
    for (const EnvVec& env : env_vecs_) {
      const double w = w_in * env.weight;
      const int dmin = i0 - env.hi;
      const int dmax = i1 - env.lo;
      c.setZero();
      for (int d = dmin; d <= dmax; ++d) {
        const int ad = std::abs(d);
        const RMat& b = blocks[static_cast<std::size_t>(ad)];
        const int extent = static_cast<int>(b.rows());
        x = Vec::Zero(extent);
        bool any = false;
        if (d >= 0) {
          const int m0 = std::max(env.lo, i0 - d);
          const int m1 = std::min(env.hi, i1 - d);
          for (int m = m0; m <= m1; ++m) {
            x(m) = amps(d + m) * env.amps(m);
            any = true;
          }
        } else {
          const int a0 = std::max(i0, env.lo - ad);
          const int a1 = std::min(i1, env.hi - ad);
          for (int i = a0; i <= a1; ++i) {
            x(i) = amps(i) * env.amps(ad + i);
            any = true;
          }
        }
        if (!any) continue;
        y.noalias() = b * x;
        const int used = n_out - std::max(d, 0) + 1;
        if (d >= 0)
          for (int j = 0; j < used; ++j) c(d + j, j) += y(j);
        else
          for (int j = 0; j < used; ++j) c(j, ad + j) += y(j);
      }
      for (int k = 0; k < col_dim; ++k) {
        const int j0 = std::max(0, k + dmin);
        const int j1 = std::min(n_out, k + dmax);
        if (j1 < j0) continue;
        const int len = j1 - j0 + 1;
        auto seg = c.col(k).segment(j0, len);
        acc.block(j0, j0, len, len).noalias() += w * seg * seg.adjoint();
      }
    }
  }
  escaped = std::max(0.0, total_in - acc.trace().real());
  return acc;
}

DensityOperator Channel::apply_decomposed(
    const std::vector<std::pair<Vec, double>>& inputs, int n_in,
    double input_deficit) const {
  Mat acc;
  double escaped = 0.0;
  if (spec_.kind == ChannelSpec::Kind::Attenuator) {
    acc = run_attenuator(inputs, n_in);
  } else {
    int n_out = output_cutoff_for(n_in);
    const int cap = spec_.config.output_cap;
    for (;;) {
      acc = run_amplifier(inputs, n_in, n_out, escaped);
      if (escaped <= spec_.config.output_tail_tol || n_out >= cap) break;
      n_out = std::min(2 * n_out, cap);
    }
    if (escaped > spec_.config.output_tail_tol)
      throw TruncationError(
          "amplifier: output tail " + std::to_string(escaped) +
          " above tolerance at the cutoff cap " + std::to_string(cap));
  }
  const double tr = acc.trace().real();
  if (tr <= 0.0) throw InvalidStateError("channel: output has no trace mass");
  DensityOperator out;
  out.matrix = acc / tr;
  out.trace_deficit = input_deficit + env_rho_.trace_deficit + escaped;
  return out;
}

DensityOperator Channel::apply(const FockState& psi) const {
  if (psi.norm_deficit > spec_.config.max_input_deficit &&
      !spec_.config.allow_deficit)
    throw TruncationError("channel: input norm deficit " +
                          std::to_string(psi.norm_deficit) +
                          " exceeds the guard; rebuild at a larger cutoff");
  std::vector<std::pair<Vec, double>> inputs;
  inputs.emplace_back(psi.amps, 1.0);
  return apply_decomposed(inputs, psi.cutoff(), psi.norm_deficit);
}

DensityOperator Channel::apply(const DensityOperator& rho) const {
  if (rho.trace_deficit > spec_.config.max_input_deficit &&
      !spec_.config.allow_deficit)
    throw TruncationError("channel: input trace deficit " +
                          std::to_string(rho.trace_deficit) +
                          " exceeds the guard; rebuild at a larger cutoff");
  const int n_in = rho.cutoff();
  std::vector<std::pair<Vec, double>> inputs;
  if (matrix_number_diagonal(rho.matrix)) {
    for (int i = 0; i <= n_in; ++i) {
      const double p = rho.matrix(i, i).real();
      if (p <= 1e-16) continue;
      Vec e = Vec::Zero(n_in + 1);
      e(i) = 1.0;
      inputs.emplace_back(std::move(e), p);
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix);
    if (es.info() != Eigen::Success)
      throw InvalidStateError("channel: input eigendecomposition failed");
    if (es.eigenvalues().minCoeff() < kEigClipFloor)
      throw InvalidStateError("channel: input has eigenvalue " +
                              std::to_string(es.eigenvalues().minCoeff()) +
                              " < -1e-10");
    for (int i = es.eigenvalues().size() - 1; i >= 0; --i) {
      const double w = es.eigenvalues()(i);
      if (w <= kEnvEigFloor) continue;
      inputs.emplace_back(es.eigenvectors().col(i), w);
    }
  }
  if (inputs.empty())
    throw InvalidStateError("channel: input has no spectral weight");
  return apply_decomposed(inputs, n_in, rho.trace_deficit);
}

std::vector<Mat> Channel::kraus_operators(int input_cutoff) const {
  if (spec_.kind != ChannelSpec::Kind::Attenuator)
    throw DomainError(
        "kraus_operators: amplifier needs an explicit output cutoff");
  return kraus_operators(input_cutoff, input_cutoff + env_cutoff_);
}

std::vector<Mat> Channel::kraus_operators(int input_cutoff,
                                          int output_cutoff) const {
  if (input_cutoff < 0 || output_cutoff < 0)
    throw DomainError("kraus_operators: cutoffs must be >= 0");
  const int n_in = input_cutoff, n_out = output_cutoff;
  std::vector<Mat> kraus;

  if (spec_.kind == ChannelSpec::Kind::Attenuator) {
    const int max_total = n_in + env_cutoff_;
    const auto bs = bs_blocks(max_total);
    for (const EnvVec& env : env_vecs_) {
      const double sw = std::sqrt(env.weight);
      for (int k = 0; k <= max_total; ++k) {
        Mat b = Mat::Zero(n_out + 1, n_in + 1);
        for (int i = 0; i <= n_in; ++i)
          for (int j = 0; j <= std::min(n_out, max_total - k); ++j) {
            const int m = j + k - i;
            if (m < env.lo || m > env.hi) continue;
            b(j, i) = sw * env.amps(m) *
                      bs->blocks[static_cast<std::size_t>(j + k)](j, i);
          }
        kraus.push_back(std::move(b));
      }
    }
    return kraus;
  }

  const double r = std::acosh(std::sqrt(spec_.gain));
  const int d_span = std::max({n_in, env_cutoff_, n_out + env_cutoff_});
  const int cmax = std::max(n_in, env_cutoff_);
  std::vector<RMat> blocks(static_cast<std::size_t>(d_span) + 1);
  for (int d = 0; d <= d_span; ++d) {
    int extent = std::max(n_out + 2 + std::max(8, n_out / 4), cmax + 3);
    for (;;) {
      blocks[static_cast<std::size_t>(d)] = tms_block(r, d, extent);
      const RMat& b = blocks[static_cast<std::size_t>(d)];
      const int ccheck = std::min(cmax, extent - 1);
      double boundary = 0.0;
      for (int c = 0; c <= ccheck; ++c)
        boundary = std::max(
            boundary, std::max(std::abs(b(extent - 1, c)),
                               std::abs(b(extent - 2, c))));
      if (boundary <= kBlockBoundaryTol) break;
      if (extent >= kBlockExtentCap)
        throw TruncationError("kraus_operators: gain spreads past the block "
                              "extent cap");
      extent = std::min(2 * extent, kBlockExtentCap);
    }
  }
  for (const EnvVec& env : env_vecs_) {
    const double sw = std::sqrt(env.weight);
    for (int k = 0; k <= n_out + env_cutoff_; ++k) {
      Mat b = Mat::Zero(n_out + 1, n_in + 1);
      for (int i = 0; i <= n_in; ++i)
        for (int j = 0; j <= n_out; ++j) {
          const int m = i - j + k;
          if (m < env.lo || m > env.hi) continue;
          const int d = j - k;
          const RMat& blk = blocks[static_cast<std::size_t>(std::abs(d))];
          const int extent = static_cast<int>(blk.rows());
          double entry;
          if (d >= 0) {
            if (k >= extent || m >= extent) continue;
            entry = blk(k, m);
          } else {
            if (j >= extent || i >= extent) continue;
            entry = blk(j, i);
          }
          b(j, i) = sw * env.amps(m) * entry;
        }
      kraus.push_back(std::move(b));
    }
  }
  return kraus;
}

// ---- free functions --------------------------------------------------------

DensityOperator apply_channel(const ChannelSpec& spec,
                              const DensityOperator& rho) {
  return Channel(spec).apply(rho);
}

DensityOperator apply_channel(const ChannelSpec& spec, const FockState& psi) {
  return Channel(spec).apply(psi);
}

PhaseSpaceMoments output_moments(const ChannelSpec& spec,
                                 const PhaseSpaceMoments& in) {
  const Channel ch(spec);
  const PhaseSpaceMoments env = moments(ch.env_density());
  PhaseSpaceMoments out;
  if (spec.kind == ChannelSpec::Kind::Attenuator) {
    const double eta = spec.eta;
    out.mean = std::sqrt(eta) * in.mean + std::sqrt(1.0 - eta) * env.mean;
    out.cov = eta * in.cov + (1.0 - eta) * env.cov;
  } else {
    const double g = spec.gain;
    const Eigen::Matrix2d z = Eigen::Vector2d(1.0, -1.0).asDiagonal();
    out.mean = std::sqrt(g) * in.mean + std::sqrt(g - 1.0) * (z * env.mean);
    out.cov = g * in.cov + (g - 1.0) * (z * env.cov * z);
  }
  return out;
}

ChannelSpec gaussian_equivalent(const ChannelSpec& spec) {
  const Channel ch(spec);
  const Complex a1 = expect_a(ch.env_density());
  const Complex a2 = expect_a2(ch.env_density());
  if (std::abs(a1) > 1e-8 || std::abs(a2) > 1e-8) {
    const EnvNormalForm nf =
        environment_normal_form(spec.environment, ch.env_cutoff());
    throw DomainError(
        "gaussian_equivalent: environment is not phase insensitive "
        "(|<a>| = " + std::to_string(std::abs(a1)) +
        ", |<a^2>| = " + std::to_string(std::abs(a2)) +
        "); normalize with R(" + std::to_string(-nf.rotation) +
        ") then S(" + std::to_string(-nf.squeeze) + ")");
  }
  ChannelSpec out = spec;
  out.environment = Environment::thermal(ch.env_mean_photon());
  return out;
}

CovarianceCheckResult covariance_check(const ChannelSpec& spec,
                                       const Symmetry& g,
                                       const DensityOperator& probe) {
  const Channel ch(spec);
  CovarianceCheckResult res;
  res.symmetry = g;
  // The two-mode unitary commutes with G ⊗ G' where the ancilla partner G'
  // has the opposite angle for the amplifier (a†b† picks up e^{iθ}e^{-iθ}).
  Symmetry env_g = g;
  if (spec.kind == ChannelSpec::Kind::Amplifier) env_g.theta = -g.theta;
  res.env_residual = symmetry_residual(env_g, ch.env_density());
  res.env_symmetric = res.env_residual <= 1e-8;

  const DensityOperator lhs = ch.apply(apply_symmetry(g, probe));
  const DensityOperator rhs = apply_symmetry(g, ch.apply(probe));
  const int cut = std::max(lhs.cutoff(), rhs.cutoff());
  res.channel_residual =
      trace_norm_hermitian(lhs.resized(cut).matrix - rhs.resized(cut).matrix);
  return res;
}

EnvNormalForm environment_normal_form(const Environment& env, int cutoff) {
  const DensityOperator rho = env.realize(cutoff);
  const PhaseSpaceMoments m = moments(rho);
  EnvNormalForm nf;
  const double vxx = m.cov(0, 0), vpp = m.cov(1, 1), vxp = m.cov(0, 1);
  nf.rotation = 0.5 * std::atan2(2.0 * vxp, vxx - vpp);
  const double c = std::cos(nf.rotation), s = std::sin(nf.rotation);
  // principal variances after rotating the state by R(-rotation)
  const double v1 = c * c * vxx + 2.0 * s * c * vxp + s * s * vpp;
  const double v2 = s * s * vxx - 2.0 * s * c * vxp + c * c * vpp;
  nf.squeeze = 0.25 * std::log(v2 / v1);
  nf.already_normal = std::abs(expect_a(rho)) <= 1e-8 &&
                      std::abs(expect_a2(rho)) <= 1e-8;
  return nf;
}

}  // namespace focklab
