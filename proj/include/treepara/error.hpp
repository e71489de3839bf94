#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace treepara {

enum class ErrorCode {
    NotPowerOfTwo,
    MissingCoordinates,
    DegenerateMetric,
    SchemaError,
    PartitionViolation,
    UnknownId,
    SizeMismatch,
    LevelOutOfRange,
    TooSmall,
    TooLarge,
    MissingDerivative,
    NotC2,
    NotDyadic,
    InvalidArgument,
    IoError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::MissingCoordinates: return "MissingCoordinates";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::PartitionViolation: return "PartitionViolation";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::MissingDerivative: return "MissingDerivative";
    case ErrorCode::NotC2: return "NotC2";
    case ErrorCode::NotDyadic: return "NotDyadic";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

/// Library-wide exception. The code identifies the failure class; the
/// message carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace treepara
