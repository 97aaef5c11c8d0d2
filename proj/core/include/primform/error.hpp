#pragma once

#include <stdexcept>
#include <string>

namespace primform {

enum class ErrorKind {
  DivisionByZero,
  NonInvertibleLeadingCoefficient,
  NonIsolatedSingularity,
  DegenerateGramMatrix,
  DegenerateMetric,
  FlatCoordinateSolver,
  IntegrabilityViolation,
  LogObstruction,
  InconsistentSystem,
  CapsExceeded,
  Unsupported,
  InvalidSpec,
  Parse,
};

const char* to_string(ErrorKind kind);

/// Structured failure raised by every module. The kind is stable and is what
/// callers branch on; the message carries the diagnostic detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        message_(message) {}

  ErrorKind kind() const { return kind_; }
  const std::string& message() const { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace primform
