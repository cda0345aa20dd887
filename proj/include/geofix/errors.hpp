#pragma once

#include <stdexcept>
#include <string>

namespace geofix {

// Invalid argument: mismatched spaces, parameters outside their domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation not available in this space (e.g. half-spaces outside normed spaces).
class UnsupportedCapability : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A non-finite value was produced while iterating; carries the step index.
class NumericFailure : public std::runtime_error {
 public:
  NumericFailure(const std::string& what, long long step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
  long long step() const noexcept { return step_; }

 private:
  long long step_;
};

// Run configuration that does not validate.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace geofix
