#pragma once

#include <complex>

#include "focklab/errors.hpp"
#include "focklab/types.hpp"

namespace focklab {

// Pure state in the truncated number basis. amps has length cutoff()+1 and is
// kept at unit norm; norm_deficit records probability mass lost to truncation
// before the renormalization.
struct FockState {
  Vec amps;
  double norm_deficit = 0.0;

  int cutoff() const { return static_cast<int>(amps.size()) - 1; }
  int dim() const { return static_cast<int>(amps.size()); }

  // Pad with zeros or truncate; truncation adds the cut mass to norm_deficit
  // and renormalizes.
  FockState resized(int new_cutoff) const;
};

// Mixed state in the truncated number basis, kept at unit trace;
// trace_deficit records probability mass lost to truncation before the
// renormalization.
struct DensityOperator {
  Mat matrix;
  double trace_deficit = 0.0;

  int cutoff() const { return static_cast<int>(matrix.rows()) - 1; }
  int dim() const { return static_cast<int>(matrix.rows()); }

  DensityOperator resized(int new_cutoff) const;
};

// First and second quadrature moments, x = (a+a†)/√2 convention: the vacuum
// covariance is I/2 and trace(cov) = 1 + 2<n> for zero-mean states.
struct PhaseSpaceMoments {
  Eigen::Vector2d mean;
  Eigen::Matrix2d cov;
};

struct TwoModeDensity {
  Mat matrix;  // basis |i, j> flattened as i * (cutoff_b + 1) + j
  int cutoff_a = 0;
  int cutoff_b = 0;

  int dim_a() const { return cutoff_a + 1; }
  int dim_b() const { return cutoff_b + 1; }
};

// ---- constructors ----------------------------------------------------------

FockState make_fock(int n, int cutoff);

// Truncated coherent state, renormalized; norm_deficit is the Poisson(|α|²)
// tail beyond the cutoff. Deficit > 1e-4 is a TruncationError.
FockState make_coherent(Complex alpha, int cutoff);

// Normalizes the given amplitude vector (DomainError on zero norm).
FockState state_from_amplitudes(Vec amps, double norm_deficit = 0.0);

// Geometric thermal state, renormalized on the truncated space; the tail is
// recorded as trace_deficit.
DensityOperator make_thermal(double nbar, int cutoff);

DensityOperator to_density(const FockState& psi);

// Wraps a matrix without renormalizing. Hermiticity is symmetrized; the
// deficit is taken at face value.
DensityOperator density_from_matrix(Mat m, double trace_deficit = 0.0);

// ---- validation ------------------------------------------------------------

// Hermitian within 1e-12, eigenvalues >= -1e-10, trace = 1 within 1e-10.
// Throws InvalidStateError.
void check_density(const DensityOperator& rho);

// ---- scalars and moments ---------------------------------------------------

Complex overlap(const FockState& a, const FockState& b);          // <a|b>
double fidelity_pure(const DensityOperator& rho, const FockState& psi);
double purity(const DensityOperator& rho);

Complex expect_a(const DensityOperator& rho);    // Tr[ρ a]
Complex expect_a2(const DensityOperator& rho);   // Tr[ρ a²]
double mean_photon(const DensityOperator& rho);  // Tr[ρ n]
double mean_photon(const FockState& psi);

PhaseSpaceMoments moments(const DensityOperator& rho);
PhaseSpaceMoments moments(const FockState& psi);

// Hermitian trace norm Σ|λ_i|.
double trace_norm_hermitian(const Mat& m);

// ½‖a - b‖₁ in [0, 1]; dimensions are zero-padded to match.
double trace_distance(const DensityOperator& a, const DensityOperator& b);

// Distance minimized over a global phase: min_φ ‖a − e^{iφ} b‖₂.
double phase_free_distance(const Vec& a, const Vec& b);

// Ascending eigenvalues of ρ (clipped per the [-1e-10, 0) policy; more
// negative values raise InvalidStateError).
RVec density_spectrum(const DensityOperator& rho);

// ---- ladder operator and two-mode helpers ----------------------------------

Mat annihilation_matrix(int cutoff);

TwoModeDensity tensor(const DensityOperator& a, const DensityOperator& b);
DensityOperator partial_trace_second(const TwoModeDensity& rho2);
DensityOperator partial_trace_first(const TwoModeDensity& rho2);

}  // namespace focklab
