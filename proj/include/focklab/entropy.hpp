#pragma once

#include "focklab/fock.hpp"

namespace focklab {

// g(x) = (x+1)ln(x+1) - x ln x, the entropy (nats) of a thermal state with
// mean photon number x; g(0) = 0.
double g_function(double x);

// -Σ λ ln λ over the clipped spectrum, in nats. Eigenvalues in [-1e-10, 0)
// clip to zero; more negative ones raise InvalidStateError.
double von_neumann_entropy(const DensityOperator& rho);

// Entropy of a nonnegative weight vector (no clipping policy; negatives are
// an InvalidStateError below the clip floor).
double entropy_of_weights(const RVec& w);

// Tr[ρ(ln ρ - ln σ)] in nats; +inf when ρ has weight > 1e-12 outside σ's
// numerical support.
double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

}  // namespace focklab
