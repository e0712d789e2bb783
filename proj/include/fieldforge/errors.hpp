#pragma once

#include <stdexcept>
#include <string>

namespace fieldforge {

/// Invalid argument to a numerical operation (non-positive frequency, empty stock, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed, unreadable or dimensionally inconsistent configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Geometry that the magnetostatic kernels cannot evaluate (overlapping wires, open loops).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Field requested inside a conductor.
class SingularPointError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// Divergence or non-convergence of a time integrator or search.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double time = 0.0) : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace fieldforge
