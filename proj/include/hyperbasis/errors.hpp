#pragma once

#include <stdexcept>
#include <string>

namespace hyperbasis {

// Invalid arguments to the algebra and generators (bad dimension, mismatched
// operands, parameters out of range).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public InvalidArgument {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : InvalidArgument("dimension mismatch: " + std::to_string(lhs) + " vs " +
                        std::to_string(rhs)) {}
};

// Malformed experiment configuration or schema; maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or inconsistent data; maps to CLI exit code 1.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hyperbasis
