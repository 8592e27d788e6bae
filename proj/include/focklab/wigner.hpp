#pragma once

#include "focklab/fock.hpp"

namespace focklab {

// W sampled on a square grid, quadrature units (vacuum variance 1/2 in x and
// p, so ∫∫ W dx dp = 1 and |W| ≤ 1/π).
struct WignerGrid {
  RVec x_axis;
  RVec p_axis;
  RMat values;  // values(i, j) = W(x_axis(i), p_axis(j))
  bool extent_warning = false;  // extent likely too small for the state
};

// Closed-form Fock-basis kernel evaluated by the associated-Laguerre
// recurrence (scaled so every kernel value stays in [-1, 1]).
double wigner_point(const DensityOperator& rho, double x, double p);

// Axes run from -extent to extent with the given number of points per axis.
WignerGrid wigner(const DensityOperator& rho, double extent, int resolution);

// Heuristic radius covering the state's support, from the mean photon number.
double suggested_extent(const DensityOperator& rho);

}  // namespace focklab
