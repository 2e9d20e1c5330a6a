// Exception types shared across modules.
#pragma once

#include <stdexcept>
#include <string>

namespace torint {

/// Raised when an exponential integral is evaluated on (or beyond) a wall of
/// its convergence domain.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or unsupported user input; `location` names the offending field.
class InputError : public std::runtime_error {
 public:
  InputError(std::string location, const std::string& message)
      : std::runtime_error(location.empty() ? message : location + ": " + message),
        location_(std::move(location)),
        message_(message) {}
  const std::string& location() const { return location_; }
  const std::string& message() const { return message_; }

 private:
  std::string location_;
  std::string message_;
};

/// An internal identity that must hold for valid inputs failed.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Numerical routine could not reach the requested accuracy.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace torint
