#pragma once

#include <functional>
#include <vector>

namespace focklab {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes/weights on [-1, 1] for weight 1 (Golub-Welsch).
QuadRule gauss_legendre(int n);

// Nodes/weights on [0, inf) for weight e^{-x}; weights sum to 1.
QuadRule gauss_laguerre(int n);

struct Quad {
  double value = 0.0;
  double error = 0.0;  // magnitude of the internal error estimate
};

// Adaptive Gauss-Legendre (G15 against G7 per panel, bisection). abs_tol is a
// whole-interval budget distributed by panel length. Throws NonConvergenceError
// when the recursion depth cap is hit with the budget still unmet.
Quad adaptive_integrate(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth = 48);

// Same, but the interval is pre-split at the given points (kinks of f).
Quad adaptive_integrate_split(const std::function<double(double)>& f, double a,
                              double b, const std::vector<double>& splits,
                              double abs_tol, int max_depth = 48);

}  // namespace focklab
