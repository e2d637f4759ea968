#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace papperitz {

enum class ErrorKind {
  InvalidArgument,
  InvalidGamma,
  NoConvergence,
  EvaluationUnreachable,
  OnBranchCut,
  DegenerateGamma,
  PoleAtMinusI,
  PoleAtOne,
  ZeroBaseNonpositiveExponent,
  DegenerateBasis,
  DegenerateWronskian,
  StepLimitExceeded,
  PathTooCloseToSingularity,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidGamma: return "InvalidGamma";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::EvaluationUnreachable: return "EvaluationUnreachable";
    case ErrorKind::OnBranchCut: return "OnBranchCut";
    case ErrorKind::DegenerateGamma: return "DegenerateGamma";
    case ErrorKind::PoleAtMinusI: return "PoleAtMinusI";
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::ZeroBaseNonpositiveExponent: return "ZeroBaseNonpositiveExponent";
    case ErrorKind::DegenerateBasis: return "DegenerateBasis";
    case ErrorKind::DegenerateWronskian: return "DegenerateWronskian";
    case ErrorKind::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorKind::PathTooCloseToSingularity: return "PathTooCloseToSingularity";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace papperitz
