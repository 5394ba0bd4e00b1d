#pragma once

#include <stdexcept>
#include <string>

namespace coach {

/// Error taxonomy shared by every module. The kind tells callers (CLI,
/// service) how to map a failure onto an exit code or HTTP status.
enum class ErrorKind {
  InvalidInput,
  InvalidConfig,
  InsufficientFrames,
  MissingData,
  LearnerTooShort,
  SkippedAxis,
  Parse,
  Service,
  Configuration,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
  case ErrorKind::InvalidInput: return "invalid-input";
  case ErrorKind::InvalidConfig: return "invalid-config";
  case ErrorKind::InsufficientFrames: return "insufficient-frames";
  case ErrorKind::MissingData: return "missing-data";
  case ErrorKind::LearnerTooShort: return "learner-too-short";
  case ErrorKind::SkippedAxis: return "skipped-axis";
  case ErrorKind::Parse: return "parse";
  case ErrorKind::Service: return "service";
  case ErrorKind::Configuration: return "configuration";
  }
  return "unknown";
}

} // namespace coach
