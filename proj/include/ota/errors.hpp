#pragma once

#include <stdexcept>
#include <string>

namespace ota {

/// Raised when an operation receives an argument outside its domain.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for inconsistent or unparseable experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A block in which no legitimate user passes the participation gate.
class InvalidBlockError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ParameterError(message);
}

}  // namespace detail
}  // namespace ota
