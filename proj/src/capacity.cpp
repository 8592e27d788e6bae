#include "focklab/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "focklab/parallel.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/rng.hpp"

namespace focklab {
namespace {

constexpr double kLadderTol = 1e-3;  // nats, successive-order agreement
constexpr int kLadderRounds = 5;

// The additive-noise photon number of the Gaussian-equivalent channel.
double noise_photons(const ChannelSpec& spec, double env_nbar) {
  if (spec.kind == ChannelSpec::Kind::Attenuator)
    return (1.0 - spec.eta) * env_nbar;
  return (spec.gain - 1.0) * (env_nbar + 1.0);
}

struct RadialNode {
  double u = 0.0;
  double w = 0.0;
};

// Gauss-Laguerre nodes for ∫₀^∞ e^{-u} f(u) du with the numerically dead tail
// dropped (weights below 1e-14 cannot move the result at nat scale).
std::vector<RadialNode> radial_nodes(int order) {
  const QuadRule rule = gauss_laguerre(order);
  std::vector<RadialNode> nodes;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    if (rule.weights[i] > 1e-14) nodes.push_back({rule.nodes[i], rule.weights[i]});
  return nodes;
}

int coherent_cutoff(double lambda) {
  return static_cast<int>(std::ceil(lambda + 12.0 * std::sqrt(lambda))) + 25;
}

// Poisson(lambda) populations, renormalized; tail reported.
RVec poisson_diag(double lambda, int cutoff, double& tail) {
  RVec p = RVec::Zero(cutoff + 1);
  double term = std::exp(-lambda);
  double kept = 0.0;
  for (int n = 0; n <= cutoff; ++n) {
    p(n) = term;
    kept += term;
    term *= lambda / (n + 1);
  }
  tail = std::max(0.0, 1.0 - kept);
  p /= kept;
  return p;
}

void add_padded(RVec& acc, const RVec& v, double w) {
  if (v.size() > acc.size()) {
    RVec grown = RVec::Zero(v.size());
    grown.head(acc.size()) = acc;
    acc.swap(grown);
  }
  acc.head(v.size()) += w * v;
}

void add_padded(Mat& acc, const Mat& m, double w) {
  if (m.rows() > acc.rows()) {
    Mat grown = Mat::Zero(m.rows(), m.cols());
    grown.topLeftCorner(acc.rows(), acc.cols()) = acc;
    acc.swap(grown);
  }
  acc.topLeftCorner(m.rows(), m.cols()) += w * m;
}

// Phase-covariant channels map number-diagonal states to number-diagonal
// states, so the averaged term only needs the output populations of Poisson
// rings and the per-radius term one representative coherent state.
double eval_phase_covariant(const Channel& ch, double nu,
                            const std::vector<RadialNode>& nodes) {
  const int n = static_cast<int>(nodes.size());
  std::vector<RVec> ring_out(static_cast<std::size_t>(n));
  std::vector<double> s_out(static_cast<std::size_t>(n), 0.0);
  parallel_for(n, [&](int j) {
    const double lambda = nu * nodes[static_cast<std::size_t>(j)].u;
    const int n_in = coherent_cutoff(lambda);
    const FockState probe = make_coherent(std::sqrt(lambda), n_in);
    s_out[static_cast<std::size_t>(j)] = von_neumann_entropy(ch.apply(probe));

    double tail = 0.0;
    const RVec p = poisson_diag(lambda, n_in, tail);
    DensityOperator ring;
    ring.matrix = Mat::Zero(n_in + 1, n_in + 1);
    ring.matrix.diagonal() = p.cast<Complex>();
    ring.trace_deficit = tail;
    ring_out[static_cast<std::size_t>(j)] =
        ch.apply(ring).matrix.diagonal().real();
  });
  RVec avg = RVec::Zero(1);
  double total_w = 0.0, mean_s = 0.0;
  for (int j = 0; j < n; ++j) {
    add_padded(avg, ring_out[static_cast<std::size_t>(j)],
               nodes[static_cast<std::size_t>(j)].w);
    mean_s += nodes[static_cast<std::size_t>(j)].w *
              s_out[static_cast<std::size_t>(j)];
    total_w += nodes[static_cast<std::size_t>(j)].w;
  }
  avg /= total_w;
  return entropy_of_weights(avg) - mean_s / total_w;
}

double eval_full(const Channel& ch, double nu,
                 const std::vector<RadialNode>& nodes, int angular) {
  const int n = static_cast<int>(nodes.size());
  std::vector<Mat> avg_j(static_cast<std::size_t>(n));
  std::vector<double> s_j(static_cast<std::size_t>(n), 0.0);
  parallel_for(n, [&](int j) {
    const double lambda = nu * nodes[static_cast<std::size_t>(j)].u;
    const int n_in = coherent_cutoff(lambda);
    Mat acc = Mat::Zero(1, 1);
    double s_sum = 0.0;
    for (int k = 0; k < angular; ++k) {
      const double phi = 2.0 * M_PI * k / angular;
      const Complex alpha = std::sqrt(lambda) * std::exp(Complex(0.0, phi));
      const DensityOperator out = ch.apply(make_coherent(alpha, n_in));
      s_sum += von_neumann_entropy(out);
      add_padded(acc, out.matrix, 1.0 / angular);
    }
    avg_j[static_cast<std::size_t>(j)] = std::move(acc);
    s_j[static_cast<std::size_t>(j)] = s_sum / angular;
  });
  Mat avg = Mat::Zero(1, 1);
  double total_w = 0.0, mean_s = 0.0;
  for (int j = 0; j < n; ++j) {
    add_padded(avg, avg_j[static_cast<std::size_t>(j)],
               nodes[static_cast<std::size_t>(j)].w);
    mean_s += nodes[static_cast<std::size_t>(j)].w *
              s_j[static_cast<std::size_t>(j)];
    total_w += nodes[static_cast<std::size_t>(j)].w;
  }
  DensityOperator rho;
  rho.matrix = avg / total_w;
  return von_neumann_entropy(rho) - mean_s / total_w;
}

}  // namespace

double capacity_gaussian(double eta_or_gain, double nbar, double nu) {
  if (!(eta_or_gain > 0.0))
    throw DomainError("capacity_gaussian: channel parameter must be > 0");
  if (nbar < 0.0) throw DomainError("capacity_gaussian: nbar must be >= 0");
  if (nu < 0.0) throw DomainError("capacity_gaussian: nu must be >= 0");
  if (eta_or_gain <= 1.0)
    return g_function(eta_or_gain * nu + nbar) - g_function(nbar);
  const double m = (eta_or_gain - 1.0) * (nbar + 1.0);
  return g_function(eta_or_gain * nu + m) - g_function(m);
}

double s_min_gaussian(const ChannelSpec& spec) {
  const Channel ch(spec);
  return g_function(noise_photons(spec, ch.env_mean_photon()));
}

double vacuum_output_entropy(const ChannelSpec& spec) {
  return von_neumann_entropy(apply_channel(spec, make_fock(0, 0)));
}

DeltaMaxResult delta_max(const ChannelSpec& spec,
                         std::optional<double> s_min_search) {
  DeltaMaxResult r;
  r.s_min_gaussian = s_min_gaussian(spec);
  r.search_mode = s_min_search.has_value();
  r.s_min = s_min_search ? *s_min_search : vacuum_output_entropy(spec);
  r.value = r.s_min_gaussian - r.s_min;
  return r;
}

CapacityInterval capacity_interval(const ChannelSpec& spec, double nu,
                                   std::optional<double> s_min_search) {
  if (nu < 0.0) throw DomainError("capacity_interval: nu must be >= 0");
  const Channel ch(spec);
  CapacityInterval ci;
  ci.nu = nu;
  const double noise = noise_photons(spec, ch.env_mean_photon());
  const double param = spec.parameter();
  ci.c_gaussian = g_function(param * nu + noise) - g_function(noise);
  ci.delta = delta_max(spec, s_min_search).value;
  ci.upper = ci.c_gaussian + ci.delta;
  return ci;
}

HolevoEstimate holevo_coherent_ensemble(const ChannelSpec& spec, double nu,
                                        int quadrature_order) {
  if (nu < 0.0) throw DomainError("holevo: nu must be >= 0");
  if (quadrature_order < 2)
    throw DomainError("holevo: quadrature_order must be >= 2");
  const Channel ch(spec);
  HolevoEstimate est;
  if (nu == 0.0) {
    est.radial_order = quadrature_order;
    est.angular_order = ch.phase_covariant() ? 1 : 0;
    return est;
  }
  const int q0 = std::max(quadrature_order, 6);
  double prev = 0.0;
  for (int round = 0; round < kLadderRounds; ++round) {
    const int q = q0 << round;
    const auto nodes = radial_nodes(q);
    const int angular = ch.phase_covariant() ? 1 : std::max(16, q);
    const double v = ch.phase_covariant()
                         ? eval_phase_covariant(ch, nu, nodes)
                         : eval_full(ch, nu, nodes, angular);
    est.refinement.push_back(v);
    if (round > 0 && std::abs(v - prev) < kLadderTol) {
      est.value = v;
      est.error = std::abs(v - prev);
      est.radial_order = q;
      est.angular_order = angular;
      return est;
    }
    prev = v;
  }
  std::string trace;
  for (double v : est.refinement) trace += " " + std::to_string(v);
  throw NonConvergenceError(
      "holevo: quadrature ladder did not settle below 1e-3 nats; values:" +
      trace);
}

HolevoEstimate holevo_coherent_mc(const ChannelSpec& spec, double nu,
                                  int samples, std::uint64_t seed) {
  if (nu < 0.0) throw DomainError("holevo_mc: nu must be >= 0");
  if (samples < 2) throw DomainError("holevo_mc: need at least 2 samples");
  const Channel ch(spec);
  HolevoEstimate est;
  if (nu == 0.0) return est;
  Rng rng(seed);
  Mat avg = Mat::Zero(1, 1);
  double s_sum = 0.0, s_sq = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Complex alpha = std::sqrt(nu / 2.0) * rng.complex_normal();
    const int n_in = coherent_cutoff(std::norm(alpha));
    const DensityOperator out = ch.apply(make_coherent(alpha, n_in));
    const double so = von_neumann_entropy(out);
    s_sum += so;
    s_sq += so * so;
    add_padded(avg, out.matrix, 1.0);
  }
  DensityOperator rho;
  rho.matrix = avg / samples;
  const double mean_s = s_sum / samples;
  est.value = von_neumann_entropy(rho) - mean_s;
  const double var = std::max(0.0, s_sq / samples - mean_s * mean_s);
  est.error = std::sqrt(var / samples);
  return est;
}

}  // namespace focklab
