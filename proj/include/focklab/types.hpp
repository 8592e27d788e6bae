#pragma once

#include <Eigen/Dense>
#include <complex>

namespace focklab {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr const char* kVersion = "0.1.0";

// Inputs whose truncation deficit exceeds this are refused by channel
// application unless the caller sets an explicit override.
inline constexpr double kMaxInputDeficit = 1e-4;

// Density-operator eigenvalues in [kEigClipFloor, 0) are clipped to zero;
// anything more negative is an InvalidStateError.
inline constexpr double kEigClipFloor = -1e-10;

}  // namespace focklab
