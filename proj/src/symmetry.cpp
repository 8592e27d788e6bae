#include "focklab/symmetry.hpp"

#include <cmath>
#include <cstdio>

namespace focklab {

std::string Symmetry::label() const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s(%.6g)",
                kind == Kind::Rotation ? "R" : "M", theta);
  return buf;
}

FockState apply_symmetry(const Symmetry& g, const FockState& psi) {
  return g.kind == Symmetry::Kind::Rotation ? rotate(psi, g.theta)
                                            : reflect(psi, g.theta);
}

DensityOperator apply_symmetry(const Symmetry& g, const DensityOperator& rho) {
  return g.kind == Symmetry::Kind::Rotation ? rotate(rho, g.theta)
                                            : reflect(rho, g.theta);
}

double symmetry_residual(const Symmetry& g, const FockState& psi) {
  const FockState gpsi = apply_symmetry(g, psi);
  const double ov = std::abs(overlap(psi, gpsi));
  const double s = 2.0 - 2.0 * std::min(ov, 1.0);
  return std::sqrt(std::max(s, 0.0));
}

double symmetry_residual(const Symmetry& g, const DensityOperator& rho) {
  const DensityOperator grho = apply_symmetry(g, rho);
  return trace_distance(grho, rho) * 2.0;
}

}  // namespace focklab
