#pragma once

#include <functional>
#include <string>
#include <vector>

#include "focklab/quadrature.hpp"
#include "focklab/types.hpp"

namespace focklab {

// Zero-mean additive-noise density, represented by an evaluator plus the
// support hint the quadrature integrates over (wide enough that the excluded
// tails are below 1e-12 in mass). kinks lists interior non-smooth points the
// adaptive integrator must split at.
struct NoiseDensity {
  std::function<double(double)> pdf;
  double variance = 0.0;
  double support_lo = 0.0;
  double support_hi = 0.0;
  std::vector<double> kinks;
  std::string name;
};

NoiseDensity gaussian_noise(double variance);
NoiseDensity uniform_noise(double variance);
NoiseDensity laplace_noise(double variance);

// Mixture of Gaussians; the means are shifted by the weighted mean so the
// result is exactly zero-mean, and the variance field is recomputed.
NoiseDensity gaussian_mixture_noise(RVec weights, RVec means, RVec variances);

// Y = s·X: pdf(x/s)/s with scaled variance/support/kinks.
NoiseDensity scaled_noise(const NoiseDensity& p, double s);

// ∫p = 1 within 1e-8, ∫x·p = 0 within 1e-8, ∫x²·p = variance within 1e-6.
// Throws InvalidStateError with the failing integral.
void validate_noise(const NoiseDensity& p);

// h(N) = -∫ p ln p, nats; .error is the quadrature error estimate.
Quad differential_entropy(const NoiseDensity& p);

// C = ½ ln(1 + gamma) for signal-to-noise ratio gamma.
double classical_capacity_gaussian(double gamma);

// Δ_cl = h(N_G) - h(N) = ½ ln(2πeσ²) - h(N), the non-Gaussianity of N.
Quad delta_classical(const NoiseDensity& p);

// I(X_G; X_G + N) = h(X_G + N) - h(N) for X_G ~ N(0, E), via the convolution
// density evaluated by nested quadrature.
Quad mutual_information_gaussian_input(const NoiseDensity& p, double E);

}  // namespace focklab
