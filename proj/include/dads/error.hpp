#pragma once

#include <stdexcept>
#include <string>

namespace dads {

/// Raised for malformed inputs: invalid parameters, unknown built-ins,
/// mismatched plant kinds.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        message_(what),
        line_(line) {}

  int line() const noexcept { return line_; }
  /// The diagnostic without the line prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  int line_;
};

/// Raised when a time integration produces a non-finite or runaway state.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dads
