#pragma once

#include <stdexcept>
#include <string>

namespace cbkdv {

// Coarse failure categories, used by the CLI to pick an exit code.
enum class ErrorKind {
  Validation,  // bad parameters, violated constraints, malformed config
  Numerical,   // iteration failed to converge, field blew up
  Io,          // file could not be read or written
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message),
        kind_(kind),
        code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

struct InvalidParameters : Error {
  explicit InvalidParameters(const std::string& message)
      : Error(ErrorKind::Validation, "InvalidParameters", message) {}
};

struct ConstraintViolation : Error {
  explicit ConstraintViolation(const std::string& message)
      : Error(ErrorKind::Validation, "ConstraintViolation", message) {}
};

// The ansatz width parameter C1 = 2*kappa collapsed to (numerically) zero, so
// the profile degenerates to a constant.
struct DegenerateWidth : Error {
  explicit DegenerateWidth(const std::string& message)
      : Error(ErrorKind::Validation, "DegenerateWidth", message) {}
};

struct DegenerateAmplitudes : Error {
  explicit DegenerateAmplitudes(const std::string& message)
      : Error(ErrorKind::Validation, "DegenerateAmplitudes", message) {}
};

// Exponents outside the expected 0..6 band survived denominator clearing.
// This indicates a bug in the reduction machinery, not bad user input.
struct NonvanishingStrayTerms : Error {
  explicit NonvanishingStrayTerms(const std::string& message)
      : Error(ErrorKind::Numerical, "NonvanishingStrayTerms", message) {}
};

struct NoConvergence : Error {
  explicit NoConvergence(const std::string& message)
      : Error(ErrorKind::Numerical, "NoConvergence", message) {}
};

struct ConvergedToDegenerate : Error {
  explicit ConvergedToDegenerate(const std::string& message)
      : Error(ErrorKind::Numerical, "ConvergedToDegenerate", message) {}
};

struct BlowUp : Error {
  explicit BlowUp(const std::string& message)
      : Error(ErrorKind::Numerical, "BlowUp", message) {}
};

struct DomainTooNarrow : Error {
  explicit DomainTooNarrow(const std::string& message)
      : Error(ErrorKind::Validation, "DomainTooNarrow", message) {}
};

struct SweepOutsideValidity : Error {
  explicit SweepOutsideValidity(const std::string& message)
      : Error(ErrorKind::Validation, "SweepOutsideValidity", message) {}
};

struct IoError : Error {
  explicit IoError(const std::string& message)
      : Error(ErrorKind::Io, "IoError", message) {}
};

}  // namespace cbkdv
