#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace snls {

/// Invalid parameter passed to a public operation.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Grid spacing too coarse for the requested mollification scale.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Base for failures of the numerical integrators.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BlowUpError : public NumericalError {
 public:
  explicit BlowUpError(std::size_t step)
      : NumericalError("non-finite field value encountered at step " + std::to_string(step)),
        step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class OracleInstabilityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace snls
