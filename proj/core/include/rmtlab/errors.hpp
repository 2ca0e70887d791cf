#pragma once

#include <stdexcept>
#include <string>

namespace rmt {

/// Base class for all rmtlab errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (bad K, p > n, malformed input).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Requested distribution parameters admit no valid calibration.
class InfeasibleParametersError : public Error {
 public:
  using Error::Error;
};

/// A requested allocation exceeds the configured memory budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Iterative eigensolver failed to converge; carries the last residual.
class EigensolverError : public Error {
 public:
  EigensolverError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace rmt
