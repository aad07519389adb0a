#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cubicsplit {

enum class ErrorCode {
  RationalRootFound,
  NonNegativeDiscriminant,
  ZeroA2,
  ZeroElement,
  SearchBudgetExceeded,
  NonPositiveGamma,
  HalfIntegerTie,
  DegenerateProjection,
  DeltaOutOfRange,
  EmptyPrimitiveSet,
  InsufficientPrimitiveCut,
  NonPositiveEps,
  CoincidentDescriptors,
  NonPositiveInputs,
  ConfigParseError,
  UnknownPreset,
  InternalFault,
};

std::string_view error_name(ErrorCode code) noexcept;

/// True for errors caused by the caller's input (CLI exit code 2); the rest
/// are internal faults (exit code 3).
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cubicsplit
