#include "focklab/classical.hpp"

#include <algorithm>
#include <cmath>

#include "focklab/errors.hpp"

namespace focklab {
namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

std::vector<double> clipped_kinks(const NoiseDensity& p, double lo, double hi) {
  std::vector<double> k;
  for (double x : p.kinks)
    if (x > lo && x < hi) k.push_back(x);
  return k;
}

}  // namespace

NoiseDensity gaussian_noise(double variance) {
  if (variance <= 0.0)
    throw DomainError("gaussian_noise: variance must be > 0");
  const double sigma = std::sqrt(variance);
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * M_PI));
  NoiseDensity p;
  p.pdf = [norm, variance](double x) {
    return norm * std::exp(-0.5 * x * x / variance);
  };
  p.variance = variance;
  p.support_lo = -9.0 * sigma;
  p.support_hi = 9.0 * sigma;
  p.name = "gaussian";
  return p;
}

NoiseDensity uniform_noise(double variance) {
  if (variance <= 0.0)
    throw DomainError("uniform_noise: variance must be > 0");
  const double a = std::sqrt(3.0 * variance);
  NoiseDensity p;
  p.pdf = [a](double x) { return std::abs(x) <= a ? 0.5 / a : 0.0; };
  p.variance = variance;
  p.support_lo = -a;
  p.support_hi = a;
  p.name = "uniform";
  return p;
}

NoiseDensity laplace_noise(double variance) {
  if (variance <= 0.0)
    throw DomainError("laplace_noise: variance must be > 0");
  const double b = std::sqrt(variance / 2.0);
  NoiseDensity p;
  p.pdf = [b](double x) { return std::exp(-std::abs(x) / b) / (2.0 * b); };
  p.variance = variance;
  p.support_lo = -50.0 * b;
  p.support_hi = 50.0 * b;
  p.kinks = {0.0};
  p.name = "laplace";
  return p;
}

NoiseDensity gaussian_mixture_noise(RVec weights, RVec means, RVec variances) {
  const int k = static_cast<int>(weights.size());
  if (k == 0 || means.size() != k || variances.size() != k)
    throw DomainError("gaussian_mixture_noise: component arrays must match");
  double wsum = 0.0;
  for (int i = 0; i < k; ++i) {
    if (weights(i) <= 0.0)
      throw DomainError("gaussian_mixture_noise: weights must be > 0");
    if (variances(i) <= 0.0)
      throw DomainError("gaussian_mixture_noise: variances must be > 0");
    wsum += weights(i);
  }
  weights /= wsum;
  means.array() -= weights.dot(means);  // zero mean exactly
  NoiseDensity p;
  double var = 0.0, lo = 0.0, hi = 0.0;
  std::vector<double> norms(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    var += weights(i) * (variances(i) + means(i) * means(i));
    const double sigma = std::sqrt(variances(i));
    lo = std::min(lo, means(i) - 9.0 * sigma);
    hi = std::max(hi, means(i) + 9.0 * sigma);
    norms[static_cast<std::size_t>(i)] =
        weights(i) / (sigma * std::sqrt(2.0 * M_PI));
  }
  p.pdf = [weights, means, variances, norms, k](double x) {
    double v = 0.0;
    for (int i = 0; i < k; ++i) {
      const double d = x - means(i);
      v += norms[static_cast<std::size_t>(i)] *
           std::exp(-0.5 * d * d / variances(i));
    }
    return v;
  };
  p.variance = var;
  p.support_lo = lo;
  p.support_hi = hi;
  p.name = "gaussian-mixture";
  return p;
}

NoiseDensity scaled_noise(const NoiseDensity& p, double s) {
  if (s <= 0.0) throw DomainError("scaled_noise: scale must be > 0");
  NoiseDensity out;
  auto base = p.pdf;
  out.pdf = [base, s](double x) { return base(x / s) / s; };
  out.variance = s * s * p.variance;
  out.support_lo = s * p.support_lo;
  out.support_hi = s * p.support_hi;
  for (double x : p.kinks) out.kinks.push_back(s * x);
  out.name = p.name + "-scaled";
  return out;
}

void validate_noise(const NoiseDensity& p) {
  if (!p.pdf) throw DomainError("noise density: missing evaluator");
  if (p.variance <= 0.0)
    throw DomainError("noise density: variance must be > 0");
  if (!(p.support_hi > p.support_lo))
    throw DomainError("noise density: empty support interval");
  const auto kinks = clipped_kinks(p, p.support_lo, p.support_hi);
  const Quad norm = adaptive_integrate_split(p.pdf, p.support_lo, p.support_hi,
                                             kinks, 1e-10);
  if (std::abs(norm.value - 1.0) > 1e-8)
    throw InvalidStateError("noise density: integral " +
                            std::to_string(norm.value) + " != 1");
  const Quad mean = adaptive_integrate_split(
      [&p](double x) { return x * p.pdf(x); }, p.support_lo, p.support_hi,
      kinks, 1e-10);
  if (std::abs(mean.value) > 1e-8)
    throw InvalidStateError("noise density: mean " +
                            std::to_string(mean.value) + " != 0");
  const Quad var = adaptive_integrate_split(
      [&p](double x) { return x * x * p.pdf(x); }, p.support_lo, p.support_hi,
      kinks, 1e-9);
  if (std::abs(var.value - p.variance) > 1e-6)
    throw InvalidStateError("noise density: second moment " +
                            std::to_string(var.value) + " != declared " +
                            std::to_string(p.variance));
}

Quad differential_entropy(const NoiseDensity& p) {
  if (!p.pdf) throw DomainError("differential_entropy: missing evaluator");
  if (p.variance <= 0.0)
    throw DomainError("differential_entropy: degenerate (point-supported) "
                      "density");
  if (!(p.support_hi > p.support_lo))
    throw DomainError("differential_entropy: empty support interval");
  const Quad q = adaptive_integrate_split(
      [&p](double x) { return xlogx(p.pdf(x)); }, p.support_lo, p.support_hi,
      clipped_kinks(p, p.support_lo, p.support_hi), 1e-10);
  return {-q.value, q.error};
}

double classical_capacity_gaussian(double gamma) {
  if (gamma < 0.0)
    throw DomainError("classical_capacity_gaussian: gamma must be >= 0");
  return 0.5 * std::log1p(gamma);
}

Quad delta_classical(const NoiseDensity& p) {
  const Quad h = differential_entropy(p);
  const double h_gauss = 0.5 * std::log(2.0 * M_PI * M_E * p.variance);
  return {h_gauss - h.value, h.error};
}

Quad mutual_information_gaussian_input(const NoiseDensity& p, double E) {
  if (E <= 0.0)
    throw DomainError("mutual_information_gaussian_input: E must be > 0");
  const Quad h_n = differential_entropy(p);
  const double se = std::sqrt(E);
  const double norm = 1.0 / (se * std::sqrt(2.0 * M_PI));
  // pdf of Y = X_G + N; the Gaussian convolution makes it smooth, so the
  // outer integral needs no splits.
  auto pdf_y = [&p, E, se, norm](double y) {
    const double lo = std::max(p.support_lo, y - 9.0 * se);
    const double hi = std::min(p.support_hi, y + 9.0 * se);
    if (hi <= lo) return 0.0;
    const Quad q = adaptive_integrate_split(
        [&p, y, E, norm](double t) {
          const double d = y - t;
          return p.pdf(t) * norm * std::exp(-0.5 * d * d / E);
        },
        lo, hi, clipped_kinks(p, lo, hi), 1e-12);
    return q.value;
  };
  const double ylo = p.support_lo - 9.0 * se;
  const double yhi = p.support_hi + 9.0 * se;
  const Quad hy_neg = adaptive_integrate(
      [&pdf_y](double y) { return xlogx(pdf_y(y)); }, ylo, yhi, 1e-9);
  const double value = -hy_neg.value - h_n.value;
  return {value, hy_neg.error + h_n.error};
}

}  // namespace focklab
