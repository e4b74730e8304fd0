#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace statemetric {

enum class ErrorCode {
  NotHermitian,
  DimensionMismatch,
  NotClosed,
  DependentGenerators,
  UnknownGenerator,
  MissingParameter,
  DuplicateParameter,
  StepOutOfRange,
  PointMismatch,
  EmptyGrid,
  DegenerateSection,
  InsufficientGrid,
  InvalidSpin,
  BadNormalization,
  TruncationTooSmall,
  BadVariant,
  SubspaceLeak,
  UnknownModel,
  ParseError,
  IoError,
  InvalidParameter,
};

std::string_view to_string(ErrorCode code);

/// Compact scientific rendering for diagnostic messages.
std::string format_value(double value);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace statemetric
