#pragma once

#include <stdexcept>
#include <string>

namespace asgld {

/// Invalid user-supplied configuration (dimensions, step sizes, batch ranges).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// An API contract between components was violated (mismatched dimensions,
/// traces with inconsistent configs, missing recorded data).
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

/// Non-finite values reached a computation that requires finite input.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// A function was evaluated outside its mathematical domain.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed experiment spec text. Carries line/field context in the message.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace asgld
