#include "condent/error.hpp"

namespace condent {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroColumn: return "ZeroColumn";
        case ErrorCode::EmptySupport: return "EmptySupport";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::WeightMismatch: return "WeightMismatch";
        case ErrorCode::DimMismatch: return "DimMismatch";
        case ErrorCode::InvalidChannel: return "InvalidChannel";
        case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
        case ErrorCode::SizeOverflow: return "SizeOverflow";
        case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::ZeroVector: return "ZeroVector";
        case ErrorCode::InvalidRegime: return "InvalidRegime";
        case ErrorCode::StepTooLarge: return "StepTooLarge";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::UnknownCommand: return "UnknownCommand";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail, std::string pointer)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail),
      code_(code),
      detail_(detail),
      pointer_(std::move(pointer)) {}

}  // namespace condent
