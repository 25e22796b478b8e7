#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace volrig {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document or inconsistent request (CLI exit code 2).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Vector/matrix sizes incompatible with the requested operation.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Duplicate or out-of-range point indices.
class InvalidIndices : public Error {
 public:
  using Error::Error;
};

/// Operation defined only for a restricted range of k or n.
class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

/// Operation defined only for a subset of the metrics.
class UnsupportedMetric : public Error {
 public:
  using Error::Error;
};

/// Some (n+1)-point subset is affinely (or linearly) degenerate.
class GeneralPositionViolation : public Error {
 public:
  GeneralPositionViolation(const std::string& what, std::vector<int> subset)
      : Error(what), offending_subset(std::move(subset)) {}
  std::vector<int> offending_subset;
};

/// A simplex required to be non-degenerate has (near-)zero volume.
class DegenerateSimplex : public Error {
 public:
  using Error::Error;
};

/// Mirror construction attempted across a degenerate hyperplane.
class DegenerateHyperplane : public Error {
 public:
  using Error::Error;
};

/// Supplied coefficient vector is not a dependence of the configuration.
class InvalidDependence : public Error {
 public:
  using Error::Error;
};

/// A dependence coefficient lies below the zero gate, so the sign
/// partition is not well defined.
class ZeroCoefficient : public Error {
 public:
  using Error::Error;
};

/// A velocity field violates the tangency requirement of a curved space.
class TangencyViolation : public Error {
 public:
  using Error::Error;
};

/// An eigenvalue lies too close to zero for a stable sign count.
class RootNearZero : public Error {
 public:
  using Error::Error;
};

/// Closed-form determinant requested for a singular argument pair.
class SingularPair : public Error {
 public:
  using Error::Error;
};

/// An iterative solver failed to converge or hit its iteration cap.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

/// A sign check was requested on data whose signal sits below the noise
/// floor at every probe, so no sign can be read off.
class SignalTooSmall : public Error {
 public:
  using Error::Error;
};

}  // namespace volrig
