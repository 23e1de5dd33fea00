#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace landau {

enum class ErrorKind {
  Config,
  Parse,
  ZeroFlux,
  NonHermitianInput,
  QuadratureUnderResolved,
  QuadratureFailure,
  TruncationTooSmall,
  SmallDenominator,
  NoConvergence,
  CovarianceViolation,
  LambdaConflict,
  TailTooLarge,
  EigensolverFailure,
};

std::string_view to_string(ErrorKind kind);

/// Numerical and input failures raised by the library. The kind decides the
/// CLI exit code (config/parse errors map to 2, everything else to 3).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  bool is_input_error() const noexcept {
    return kind_ == ErrorKind::Config || kind_ == ErrorKind::Parse ||
           kind_ == ErrorKind::NonHermitianInput;
  }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::ZeroFlux: return "ZeroFlux";
    case ErrorKind::NonHermitianInput: return "NonHermitianInput";
    case ErrorKind::QuadratureUnderResolved: return "QuadratureUnderResolved";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::SmallDenominator: return "SmallDenominator";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::CovarianceViolation: return "CovarianceViolation";
    case ErrorKind::LambdaConflict: return "LambdaConflict";
    case ErrorKind::TailTooLarge: return "TailTooLarge";
    case ErrorKind::EigensolverFailure: return "EigensolverFailure";
  }
  return "Error";
}

}  // namespace landau
