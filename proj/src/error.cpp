#include "cubicsplit/error.hpp"

namespace cubicsplit {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::RationalRootFound: return "RationalRootFound";
    case ErrorCode::NonNegativeDiscriminant: return "NonNegativeDiscriminant";
    case ErrorCode::ZeroA2: return "ZeroA2";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::NonPositiveGamma: return "NonPositiveGamma";
    case ErrorCode::HalfIntegerTie: return "HalfIntegerTie";
    case ErrorCode::DegenerateProjection: return "DegenerateProjection";
    case ErrorCode::DeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorCode::EmptyPrimitiveSet: return "EmptyPrimitiveSet";
    case ErrorCode::InsufficientPrimitiveCut: return "InsufficientPrimitiveCut";
    case ErrorCode::NonPositiveEps: return "NonPositiveEps";
    case ErrorCode::CoincidentDescriptors: return "CoincidentDescriptors";
    case ErrorCode::NonPositiveInputs: return "NonPositiveInputs";
    case ErrorCode::ConfigParseError: return "ConfigParseError";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::InternalFault: return "InternalFault";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::RationalRootFound:
    case ErrorCode::NonNegativeDiscriminant:
    case ErrorCode::ZeroA2:
    case ErrorCode::ZeroElement:
    case ErrorCode::NonPositiveGamma:
    case ErrorCode::NonPositiveEps:
    case ErrorCode::NonPositiveInputs:
    case ErrorCode::ConfigParseError:
    case ErrorCode::UnknownPreset:
    case ErrorCode::InsufficientPrimitiveCut:
    case ErrorCode::EmptyPrimitiveSet:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

}  // namespace cubicsplit
