#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace condent {

enum class ErrorCode {
    ZeroColumn,
    EmptySupport,
    NotNormalized,
    InvalidParams,
    WeightMismatch,
    DimMismatch,
    InvalidChannel,
    DimensionTooLarge,
    SizeOverflow,
    DegenerateDenominator,
    HypothesisViolated,
    ZeroVector,
    InvalidRegime,
    StepTooLarge,
    SchemaError,
    UnknownCommand,
    InvalidArgument,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail, std::string pointer = {});

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }
    // JSON pointer into the offending document, empty when not applicable.
    const std::string& pointer() const noexcept { return pointer_; }

private:
    ErrorCode code_;
    std::string detail_;
    std::string pointer_;
};

}  // namespace condent
