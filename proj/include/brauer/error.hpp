#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace brauer {

enum class ErrorKind {
  BudgetExceeded,
  NoSolution,
  NoSolutionFound,
  NoWitness,
  DimensionMismatch,
  DependentVectors,
  NotDiagonal,
  CharDividesDegree,
  CharTooSmall,
  HypothesisViolated,
  MalformedCertificate,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. The kind is what callers branch on;
/// the message names the stage or check that failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::NoSolutionFound: return "NoSolutionFound";
    case ErrorKind::NoWitness: return "NoWitness";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DependentVectors: return "DependentVectors";
    case ErrorKind::NotDiagonal: return "NotDiagonal";
    case ErrorKind::CharDividesDegree: return "CharDividesDegree";
    case ErrorKind::CharTooSmall: return "CharTooSmall";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::MalformedCertificate: return "MalformedCertificate";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace brauer
