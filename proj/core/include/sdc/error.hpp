#pragma once

#include <stdexcept>
#include <string>

namespace sdc {

/// Raised when an argument violates an operation's precondition
/// (k out of range, empty input, mismatched lengths, unknown names).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when input data cannot be read or parsed.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sdc
