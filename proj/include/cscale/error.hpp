#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cscale {

enum class ErrorKind {
  InvalidArgument,
  AngleOutOfStrip,
  BranchCut,
  NonIntegrable,
  ToleranceNotMet,
  ConditionViolated,
  WrongRegime,
  NoConvergence,
  AngleOrder,
  MatchAmbiguity,
  UnsupportedVariant,
  InsufficientAlpha,
  KappaDomain,
  ClassificationUnstable,
  InvalidConfig,
};

constexpr std::string_view to_string(ErrorKind k) noexcept {
  switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::AngleOutOfStrip: return "AngleOutOfStrip";
    case ErrorKind::BranchCut: return "BranchCut";
    case ErrorKind::NonIntegrable: return "NonIntegrable";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::ConditionViolated: return "ConditionViolated";
    case ErrorKind::WrongRegime: return "WrongRegime";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::AngleOrder: return "AngleOrder";
    case ErrorKind::MatchAmbiguity: return "MatchAmbiguity";
    case ErrorKind::UnsupportedVariant: return "UnsupportedVariant";
    case ErrorKind::InsufficientAlpha: return "InsufficientAlpha";
    case ErrorKind::KappaDomain: return "KappaDomain";
    case ErrorKind::ClassificationUnstable: return "ClassificationUnstable";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace cscale
