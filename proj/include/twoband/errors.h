#pragma once

#include <stdexcept>
#include <string>

namespace twoband {

/// Base for every numerical failure raised by the library.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class GapClosedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonQuantizedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ExceptionalPointError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NormalizationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class UndefinedRatioError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InsufficientDataError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Invalid user input: malformed partitions, sweep specs, config files.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PartitionError : public SpecError {
 public:
  using SpecError::SpecError;
};

}  // namespace twoband
