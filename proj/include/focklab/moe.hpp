#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "focklab/channel.hpp"
#include "focklab/symmetry.hpp"

namespace focklab {

class Rng;

// Budget of the stochastic minimum-output-entropy routine: n_init Haar seeds,
// then n_loop sweeps of n_it perturbation trials with the deviation halved
// after each sweep.
struct MoeParams {
  int n_fock = 20;  // state cutoff (dimension n_fock + 1)
  int n_init = 50;
  int n_loop = 25;
  int n_it = 4000;
  double delta0 = 1.0;
  std::uint64_t seed = 12345;
};

struct TracePoint {
  long iteration = 0;  // global trial index at acceptance
  double entropy = 0.0;
};

struct MoeReport {
  // Zero-mean-displacement representative of the optimum: output entropy is
  // flat along D(α), so the search result is displaced back to ⟨a⟩ = 0.
  FockState best_state;
  double best_entropy = 0.0;
  MoeParams params;
  std::vector<TracePoint> trace;  // strictly decreasing entropies
  ChannelSpec channel;
  std::vector<std::pair<Symmetry, double>> symmetry_residuals;
  double coherent_fidelity = 0.0;  // max_α |<α|ψ>|²
  Complex coherent_alpha = 0.0;    // the maximizing α
  int restart_index = 0;           // winning restart (0 for single runs)
};

// Normalized standard-complex-normal vector: the first column of a Haar
// unitary in distribution.
FockState haar_random_state(int cutoff, Rng& rng);

// Greedy stochastic descent on S(M[ψ]): best of n_init Haar seeds, then
// n_loop × n_it trials ψ_test = normalize(ψ_min + δ ψ_rand) with greedy
// acceptance and δ ← δ/2 per loop. Deterministic for a fixed seed (the RNG
// advances on rejected trials too).
MoeReport minimize_output_entropy(const ChannelSpec& spec,
                                  const MoeParams& params);

// Same routine restricted to real coefficients on the ray {m·k + p}: the
// returned state is an exact R_{2π/m} eigenstate with eigenvalue
// e^{-2πip/m} and exactly M₀-invariant.
MoeReport minimize_symmetric(const ChannelSpec& spec, int m, int p,
                             const MoeParams& params);

// Independent restarts with per-restart derived seeds; the minimum wins,
// lowest restart index breaking ties.
MoeReport minimize_with_restarts(const ChannelSpec& spec,
                                 const MoeParams& params, int restarts);

std::vector<std::pair<Symmetry, double>> symmetry_residuals(
    const FockState& state, const std::vector<Symmetry>& symmetries);

// Symmetries suggested by the environment: the largest rotation fold m (≤
// max_fold) the realized environment supports within 1e-8, as
// {R(2πk/m)}_{k=1..m-1} ∪ {M(θ₀+2πk/m)}_{k=0..m-1} with θ₀ the detected
// reflection axis. Number-diagonal environments get representatives
// {R(π/2), R(π), M(0)}.
std::vector<Symmetry> environment_symmetries(const Environment& env,
                                             int cutoff, int max_fold = 12);

// Fidelity of the state to the closest coherent state: seeded at ⟨a⟩ and
// polished by a deterministic pattern search.
std::pair<double, Complex> coherent_fidelity(const FockState& state);

struct SqueezedScanPoint {
  double theta = 0.0;
  double r = 0.0;
  double s_out = 0.0;
};

struct SqueezedScanResult {
  std::vector<SqueezedScanPoint> table;  // row-major over theta × r
  double theta_min = 0.0;
  double r_min = 0.0;
  double s_min = 0.0;       // after refinement (equals grid value otherwise)
  double s_min_grid = 0.0;  // best grid point
  bool refined = false;
};

// S_out(θ, r) = S(M[R_θ S_r |0⟩⟨0| S_r† R_θ†]) over the grids, with an
// optional golden-section refinement in r at the winning θ.
SqueezedScanResult squeezed_state_scan(const ChannelSpec& spec,
                                       const RVec& thetas, const RVec& rs,
                                       int cutoff, bool refine = true);

}  // namespace focklab
