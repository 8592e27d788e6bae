#pragma once

#include <string>

#include "focklab/gaussian.hpp"

namespace focklab {

// Rotation R_θ or reflection M_θ (anti-unitary), the symmetries tested on
// environments and on MOE states.
struct Symmetry {
  enum class Kind { Rotation, Reflection };
  Kind kind = Kind::Rotation;
  double theta = 0.0;

  static Symmetry rotation_by(double theta) { return {Kind::Rotation, theta}; }
  static Symmetry reflection_about(double theta) {
    return {Kind::Reflection, theta};
  }
  std::string label() const;
};

FockState apply_symmetry(const Symmetry& g, const FockState& psi);
DensityOperator apply_symmetry(const Symmetry& g, const DensityOperator& rho);

// min over a global phase of ‖G|ψ⟩ - e^{iφ}|ψ⟩‖ = √(2 - 2|⟨ψ|Gψ⟩|).
double symmetry_residual(const Symmetry& g, const FockState& psi);

// Trace-norm residual ‖GρG† - ρ‖₁ (for reflections, conjugation included).
double symmetry_residual(const Symmetry& g, const DensityOperator& rho);

}  // namespace focklab
