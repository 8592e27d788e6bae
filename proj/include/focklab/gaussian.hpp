#pragma once

#include <vector>

#include "focklab/fock.hpp"
#include "focklab/types.hpp"

namespace focklab {

// exp(theta * G) for the real antisymmetric tridiagonal G with
// G(k+1, k) = +sub[k]. Exact real orthogonal result via the equivalent
// symmetric tridiagonal eigenproblem.
RMat exp_antisym_tridiag(const RVec& sub, double theta);

// Beam splitter exp(θ(a†b - ab†)), cosθ = √η: conserves total photon number,
// so it is stored as one real orthogonal block per total n. Block n acts on
// span{|k, n-k>}, k = 0..n, and the Heisenberg action is
// a -> √η a + √(1-η) b,  b -> -√(1-η) a + √η b.
struct BeamSplitterUnitary {
  double eta = 1.0;
  int max_total = 0;        // blocks for n = 0..max_total
  std::vector<RMat> blocks;

  const RMat& block(int n) const { return blocks[static_cast<std::size_t>(n)]; }
};

BeamSplitterUnitary beam_splitter(double eta, int max_total);

// Two-mode state in the flattened |i, j> basis (same layout as TwoModeDensity).
struct TwoModeState {
  Vec amps;
  int cutoff_a = 0;
  int cutoff_b = 0;

  int dim_a() const { return cutoff_a + 1; }
  int dim_b() const { return cutoff_b + 1; }
  Complex& at(int i, int j) { return amps(i * dim_b() + j); }
  Complex at(int i, int j) const { return amps(i * dim_b() + j); }
};

TwoModeState tensor(const FockState& a, const FockState& b);

// Applies the beam splitter to a two-mode pure state. Exact on the truncated
// space when the output keeps all totals (cutoffs grow to cutoff_a+cutoff_b).
TwoModeState apply(const BeamSplitterUnitary& u, const TwoModeState& psi);
TwoModeDensity apply(const BeamSplitterUnitary& u, const TwoModeDensity& rho);

// Single-mode Gaussian unitaries as dense truncated matrices.
struct SingleModeUnitary {
  enum class Kind { Displacement, Rotation, Squeezing };
  Kind kind = Kind::Rotation;
  Mat matrix;

  int cutoff() const { return static_cast<int>(matrix.rows()) - 1; }
};

// diag(e^{-inθ})
SingleModeUnitary rotation(double theta, int cutoff);

// exp((r/2)(a² - a†²)); squeezes x for r > 0, var_x(S_r|0>) = e^{-2r}/2.
// Throws TruncationError when the squeezed-vacuum tail beyond the cutoff
// exceeds 1e-6.
SingleModeUnitary squeezing(double r, int cutoff);

// exp(αa† - α*a); throws TruncationError when the displaced-vacuum
// Poisson tail beyond the cutoff exceeds 1e-6.
SingleModeUnitary displacement(Complex alpha, int cutoff);

FockState apply(const SingleModeUnitary& u, const FockState& psi);
DensityOperator apply(const SingleModeUnitary& u, const DensityOperator& rho);

// O(N) rotation paths (diagonal phases).
FockState rotate(const FockState& psi, double theta);
DensityOperator rotate(const DensityOperator& rho, double theta);

// Reflection M_θ = R_θ M R_θ†, anti-unitary: ψ(n) -> e^{-2inθ} conj(ψ(n)).
// Implemented as an action, not a matrix.
FockState reflect(const FockState& psi, double theta);
DensityOperator reflect(const DensityOperator& rho, double theta);

// Closed-form squeezed vacuum S_r|0> (even support), renormalized on the
// truncated space; tail recorded in norm_deficit.
FockState squeezed_vacuum(double r, int cutoff);

// Squeezed-vacuum tail mass beyond the cutoff (the truncation defect used by
// squeezing()).
double squeezed_vacuum_tail(double r, int cutoff);

// Two-mode squeezer exp(r(a†b† - ab)) with gain G = cosh²r: conserves the
// photon-number difference d = n_a - n_b, so it is stored as one real
// orthogonal block per |d|. Block d acts on span{|d+j, j>}, j >= 0 (mode roles
// swap for d < 0; the matrix is the same). Heisenberg action:
// a -> √G a + √(G-1) b†.
struct TwoModeSqueezer {
  double gain = 1.0;
  int cutoff = 0;            // per-mode cutoff the blocks were built for
  std::vector<RMat> blocks;  // blocks[d], d = 0..cutoff, extent cutoff-d+1

  const RMat& block(int d) const { return blocks[static_cast<std::size_t>(d)]; }
};

// Throws TruncationError when the two-mode squeezed-vacuum tail beyond the
// cutoff exceeds 1e-6 (the vacuum column is the hardest retained one).
TwoModeSqueezer two_mode_squeezer(double gain, int cutoff);

TwoModeState apply(const TwoModeSqueezer& u, const TwoModeState& psi);

// Single block of exp(r(a†b† - ab)) on span{|d+j, j>}, j = 0..extent-1.
// Used by the amplifier channel with its own extent policy.
RMat tms_block(double r, int d, int extent);

}  // namespace focklab
