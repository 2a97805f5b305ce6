#pragma once

#include <stdexcept>
#include <string>

namespace divsum {

/// Precondition violation (bad argument, empty domain, parse failure).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Base for failures of a computation whose inputs were valid.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A floor could not be decided before the precision cap was reached.
class UndecidableFloor : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// A certified bound is too loose for the requested use.
class PrecisionError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// Memory, iteration or word-size limits exceeded.
class ResourceError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

}  // namespace divsum
