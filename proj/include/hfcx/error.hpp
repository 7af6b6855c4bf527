#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hfcx {

enum class ErrorKind {
  NonMonomialPivot,
  InvalidComplex,
  NoTower,
  NotSouthWest,
  NotNested,
  FlipUndefined,
  BadSteps,
  InvariantViolation,
  NotLarge,
  WindowUnstable,
  ZeroSurgery,
  MismatchWithCone,
  TruncationUnstable,
  TruncationTooLow,
  DegenerateFraming,
  NotComparable,
  ParseError,
  InvalidArgument,
};

std::string_view error_kind_name(ErrorKind kind);

// Domain error carrying a stable, named kind. The CLI prints the kind name.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonMonomialPivot: return "NonMonomialPivot";
    case ErrorKind::InvalidComplex: return "InvalidComplex";
    case ErrorKind::NoTower: return "NoTower";
    case ErrorKind::NotSouthWest: return "NotSouthWest";
    case ErrorKind::NotNested: return "NotNested";
    case ErrorKind::FlipUndefined: return "FlipUndefined";
    case ErrorKind::BadSteps: return "BadSteps";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::NotLarge: return "NotLarge";
    case ErrorKind::WindowUnstable: return "WindowUnstable";
    case ErrorKind::ZeroSurgery: return "ZeroSurgery";
    case ErrorKind::MismatchWithCone: return "MismatchWithCone";
    case ErrorKind::TruncationUnstable: return "TruncationUnstable";
    case ErrorKind::TruncationTooLow: return "TruncationTooLow";
    case ErrorKind::DegenerateFraming: return "DegenerateFraming";
    case ErrorKind::NotComparable: return "NotComparable";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace hfcx
