#pragma once

#include <stdexcept>
#include <string>

namespace alp {

// Caller violated an operation's contract (bad indices, mismatched grids,
// inadmissible exponents, malformed config).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The numerics left the regime where the operation is meaningful: phase
// overflow, loss of density positivity, pressure iteration divergence.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DensityPositivityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// The analytic band delta - lambda theta would turn negative.
class BandExhaustedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace alp
