#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "focklab/channel.hpp"
#include "focklab/entropy.hpp"

namespace focklab {

// Capacity of the phase-insensitive Gaussian channel under the mean-photon
// constraint nu. eta_or_gain <= 1 selects the attenuator branch
//   g(eta·nu + nbar) - g(nbar),             nbar = additive noise photons;
// eta_or_gain > 1 the amplifier branch
//   g(G·nu + m) - g(m),  m = (G-1)(nbar+1), nbar = environment photons.
double capacity_gaussian(double eta_or_gain, double nbar, double nu);

// Minimum output entropy of the Gaussian-equivalent channel (vacuum input):
// attenuator g((1-eta)·n̄_env), amplifier g((G-1)(n̄_env+1)), with n̄_env the
// realized environment mean photon number.
double s_min_gaussian(const ChannelSpec& spec);

// Output entropy of the vacuum probe through the channel itself; certified
// upper bound on the true minimum output entropy.
double vacuum_output_entropy(const ChannelSpec& spec);

struct DeltaMaxResult {
  double value = 0.0;           // s_min_gaussian - s_min, nats
  double s_min_gaussian = 0.0;  // vacuum entropy of the Gaussian equivalent
  double s_min = 0.0;           // the non-Gaussian minimum used
  bool search_mode = false;     // true: s_min came from a search; false:
                                // vacuum-minimizer mode (conjecture-based)
};

// Capacity-interval width upper bound. Without a search value the vacuum
// output entropy stands in for the minimum (a lower bound on the width in
// general, exact under the vacuum-minimizer conjecture).
DeltaMaxResult delta_max(const ChannelSpec& spec,
                         std::optional<double> s_min_search = std::nullopt);

struct CapacityInterval {
  double nu = 0.0;
  double c_gaussian = 0.0;  // lower bound, nats
  double delta = 0.0;       // interval width, nats
  double upper = 0.0;       // c_gaussian + delta exactly
};

// [C_G, C_G + Δ] for the channel at input budget nu. The Gaussian lower bound
// uses the channel's realized environment photon number through the physical
// noise term, so the Holevo estimate of a coherent ensemble always lands
// inside the interval.
CapacityInterval capacity_interval(
    const ChannelSpec& spec, double nu,
    std::optional<double> s_min_search = std::nullopt);

struct HolevoEstimate {
  double value = 0.0;  // nats
  double error = 0.0;  // |last - previous| of the refinement ladder, or the
                       // Monte Carlo standard error
  int radial_order = 0;
  int angular_order = 0;  // 1 when the phase-covariant path was used
  std::vector<double> refinement;  // successive ladder values
};

// χ of the Gaussian-distributed coherent ensemble with mean photon number nu:
// S(M[∫ p_α φ_α]) - ∫ p_α S(M[φ_α]). Radial Gauss-Laguerre quadrature (times
// a trapezoid in phase for channels that are not phase covariant), refined by
// doubling the order until successive values differ by < 1e-3 nats.
// NonConvergenceError carries the refinement trace.
HolevoEstimate holevo_coherent_ensemble(const ChannelSpec& spec, double nu,
                                        int quadrature_order = 12);

// Monte Carlo fallback over α ~ CN(0, nu); deterministic for a fixed seed.
HolevoEstimate holevo_coherent_mc(const ChannelSpec& spec, double nu,
                                  int samples, std::uint64_t seed);

}  // namespace focklab
