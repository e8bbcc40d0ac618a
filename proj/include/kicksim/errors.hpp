#pragma once

#include <stdexcept>
#include <string>

namespace kicksim {

/// A parameter failed validation. The message names the offending field.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Significant amplitude reached the edge of the truncated momentum ladder.
class LadderOverflowError : public std::runtime_error {
 public:
  explicit LadderOverflowError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Node doubling failed to converge the stationary-distribution quadrature.
class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Detection cuts removed all probability mass from a histogram.
class EmptySignalError : public std::runtime_error {
 public:
  explicit EmptySignalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace kicksim
