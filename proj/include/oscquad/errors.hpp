#pragma once

#include <stdexcept>
#include <string>

namespace oscquad {

/// Failure categories. The CLI maps these onto its exit codes.
enum class ErrorKind {
  Parameter,
  InvalidOscillator,
  Capability,
  Domain,
  Accuracy,
  DegenerateSystem,
  FormulaMismatch,
  Refusal,
  Io,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::InvalidOscillator: return "invalid-oscillator";
    case ErrorKind::Capability: return "capability";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Accuracy: return "accuracy";
    case ErrorKind::DegenerateSystem: return "degenerate-system";
    case ErrorKind::FormulaMismatch: return "formula-mismatch";
    case ErrorKind::Refusal: return "refusal";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Accuracy failures carry the estimated error of the offending evaluation.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double est_error)
      : Error(ErrorKind::Accuracy, what), est_error_(est_error) {}

  double est_error() const noexcept { return est_error_; }

 private:
  double est_error_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace oscquad
