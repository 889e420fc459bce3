#pragma once

#include <stdexcept>
#include <string>

namespace mellin {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  Pole,
  NoBracket,
  NegativeRadicand,
  NoAdmissibleK,
  GridTooCoarse,
  ImagResidualTooLarge,
  TooManyClamped,
  OutOfRange,
  RangeViolation,
  InvalidProbability,
  CholeskyFailure,
  MissingBoundary,
  Unsupported,
  Io,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Pole: return "Pole";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::NegativeRadicand: return "NegativeRadicand";
    case ErrorCode::NoAdmissibleK: return "NoAdmissibleK";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::ImagResidualTooLarge: return "ImagResidualTooLarge";
    case ErrorCode::TooManyClamped: return "TooManyClamped";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::CholeskyFailure: return "CholeskyFailure";
    case ErrorCode::MissingBoundary: return "MissingBoundary";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Numerical-quality failures, as opposed to bad input.
  bool is_quality_failure() const noexcept {
    return code_ == ErrorCode::ImagResidualTooLarge || code_ == ErrorCode::TooManyClamped;
  }

 private:
  ErrorCode code_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace detail
}  // namespace mellin
