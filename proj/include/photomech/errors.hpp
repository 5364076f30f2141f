#pragma once

#include <stdexcept>
#include <string>

namespace photomech {

// Thrown by inversion/cofactor routines when |det A| <= 1e-12 * |A|^3.
struct SingularMatrix : std::runtime_error {
  explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a deformation gradient has det F <= 0.
struct NonPositiveJacobian : std::runtime_error {
  explicit NonPositiveJacobian(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when Newton iteration exhausts its budget above tolerance.
struct NonConvergence : std::runtime_error {
  NonConvergence(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations(iterations), residual(residual) {}
  int iterations;
  double residual;
};

// Thrown when a monitored algebraic constraint drifts beyond tolerance.
struct ConstraintViolation : std::runtime_error {
  explicit ConstraintViolation(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on malformed or inconsistent scenario configuration.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a plot/probe request names a field that does not exist.
struct UnknownField : std::runtime_error {
  explicit UnknownField(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace photomech
