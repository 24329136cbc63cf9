#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace curlspec {

// Process exit codes shared by the CLI and the job runner.
enum ExitCode : int {
  exit_ok = 0,
  exit_internal = 1,
  exit_validation = 2,
  exit_residual = 3,
  exit_closure_cap = 4,
};

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message, int exit_code)
      : std::runtime_error(message), kind_(std::move(kind)), exit_code_(exit_code) {}

  const std::string& kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return exit_code_; }

 private:
  std::string kind_;
  int exit_code_;
};

// Bad inputs: malformed literals, preconditions, resource caps on enumeration.
struct ValidationError : Error {
  explicit ValidationError(const std::string& message)
      : Error("validation", message, exit_validation) {}
};

// Numerical failure: a series coefficient did not round to a clean integer
// within the gate even after precision escalation, or an internal consistency
// check between two computation routes disagreed.
struct ResidualError : Error {
  explicit ResidualError(const std::string& message)
      : Error("residual", message, exit_residual) {}
};

// Group closure exceeded the configured order cap.
struct ClosureCapError : Error {
  explicit ClosureCapError(const std::string& message)
      : Error("closure-cap", message, exit_closure_cap) {}
};

}  // namespace curlspec
