#pragma once

#include <stdexcept>
#include <string>

namespace osar {

// Argument outside an operation's domain (index out of range, size mismatch).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Coincident platform and target, or similar degenerate geometry.
class GeometryError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Inconsistent or unreadable configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation called in the wrong lifecycle state.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A numerical integrity check failed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Request exceeds a combinatorial or size guard.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace osar
