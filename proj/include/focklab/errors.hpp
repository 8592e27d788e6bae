#pragma once

#include <stdexcept>
#include <string>

namespace focklab {

// Bad parameters or malformed configuration. CLI exit code 2.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The Fock-space cutoff lost more probability mass than the caller allowed,
// so the result would be unreliable. CLI exit code 3.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative scheme (quadrature refinement, cutoff escalation) hit its
// budget without reaching its target. CLI exit code 4.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A matrix that should have been a density operator is not one (non-Hermitian,
// eigenvalue below -1e-10, trace inconsistent with its recorded deficit).
class InvalidStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace focklab
