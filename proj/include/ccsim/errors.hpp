#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ccsim {

// Usage/configuration/parse problems. The CLI maps these to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A simulation-time property that must hold was found violated.
// The CLI maps these to exit code 1.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An eviction strategy was asked to pick a victim but its candidate set is
// empty. For the marking policies this indicates an ordering bug (the phase
// update must run before victim selection).
class NoCandidateError : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

// The exact offline optimum refuses instances beyond desk scale.
class InstanceTooLargeError : public UsageError {
 public:
  using UsageError::UsageError;
};

class TraceParseError : public UsageError {
 public:
  TraceParseError(std::size_t line, const std::string& message)
      : UsageError("trace line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ccsim
