#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace potts {

/// Invalid argument: wrong dimension, index out of range, unsupported variant.
class ArgumentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Spectral parameter (or Bethe root) too close to a pole of the weights.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A numerical routine failed (eigensolver, nullspace extraction, fit).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An operator that was required to commute with H did not.
class ConsistencyError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// The Lambda(x) component ratio was inconsistent: the state is not an
/// eigenvector of the transfer matrix family.
class DegeneracyError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class InterpolationError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Newton refinement failed; carries the best iterate and the residual trace.
class SolverError : public NumericalError {
public:
  SolverError(const std::string& what, std::vector<std::complex<double>> best,
              std::vector<double> trace)
      : NumericalError(what), best_iterate(std::move(best)),
        residual_trace(std::move(trace)) {}

  std::vector<std::complex<double>> best_iterate;
  std::vector<double> residual_trace;
};

} // namespace potts
