#include "focklab/wigner.hpp"

#include <cmath>

#include "focklab/errors.hpp"
#include "focklab/parallel.hpp"

namespace focklab {
namespace {

// K_n^{(a)}(t) = sqrt(n!/(n+a)!) e^{-t/2} t^{a/2} L_n^{(a)}(t), the magnitude
// part of <n+a|D(β)|n> at t = |β|²; bounded by 1 for every n, a, t.
void scaled_laguerre(int a, double t, int count, RVec& out) {
  if (count <= 0) return;
  double k0;
  if (a == 0) {
    k0 = std::exp(-0.5 * t);
  } else if (t <= 0.0) {
    k0 = 0.0;
  } else {
    k0 = std::exp(-0.5 * t + 0.5 * a * std::log(t) -
                  0.5 * std::lgamma(static_cast<double>(a) + 1.0));
  }
  out(0) = k0;
  if (count == 1) return;
  out(1) = (a + 1.0 - t) * k0 / std::sqrt(1.0 * (a + 1.0));
  for (int n = 1; n + 1 < count; ++n) {
    out(n + 1) = ((2.0 * n + a + 1.0 - t) * out(n) -
                  std::sqrt(static_cast<double>(n) * (n + a)) * out(n - 1)) /
                 std::sqrt(static_cast<double>(n + 1) * (n + 1 + a));
  }
}

}  // namespace

double wigner_point(const DensityOperator& rho, double x, double p) {
  const int dim = rho.dim();
  const double t = 2.0 * (x * x + p * p);
  const Complex phase_step = std::exp(Complex(0.0, -std::atan2(p, x)));
  RVec kernel(dim);

  scaled_laguerre(0, t, dim, kernel);
  double sum = 0.0;
  double sign = 1.0;
  for (int n = 0; n < dim; ++n) {
    sum += sign * rho.matrix(n, n).real() * kernel(n);
    sign = -sign;
  }
  Complex phase_a = 1.0;
  for (int a = 1; a < dim; ++a) {
    phase_a *= phase_step;
    const int count = dim - a;
    scaled_laguerre(a, t, count, kernel);
    sign = 1.0;
    for (int n = 0; n < count; ++n) {
      sum += sign * 2.0 * (rho.matrix(n + a, n) * phase_a).real() * kernel(n);
      sign = -sign;
    }
  }
  return sum / M_PI;
}

WignerGrid wigner(const DensityOperator& rho, double extent, int resolution) {
  if (resolution < 2) throw DomainError("wigner: resolution must be >= 2");
  if (extent <= 0.0) throw DomainError("wigner: extent must be > 0");
  WignerGrid grid;
  grid.x_axis = RVec::LinSpaced(resolution, -extent, extent);
  grid.p_axis = RVec::LinSpaced(resolution, -extent, extent);
  grid.values = RMat::Zero(resolution, resolution);
  grid.extent_warning = extent < 0.8 * suggested_extent(rho);
  parallel_for(resolution, [&](int i) {
    for (int j = 0; j < resolution; ++j)
      grid.values(i, j) = wigner_point(rho, grid.x_axis(i), grid.p_axis(j));
  });
  return grid;
}

double suggested_extent(const DensityOperator& rho) {
  return std::sqrt(2.0 * (mean_photon(rho) + 1.0)) + 2.5;
}

}  // namespace focklab
