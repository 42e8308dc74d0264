#pragma once

#include <stdexcept>
#include <string>

namespace wrc {

enum class ErrorCode {
    LengthMismatch,
    TiesPresent,
    DegenerateSize,
    Overflow,
    NonPositiveWeight,
    CapExceeded,
    InsufficientReps,
    InsufficientNullReps,
    UnsupportedCombination,
    EmptyDistribution,
    ROutOfRange,
    ParameterOutOfDomain,
    MethodUnavailable,
    SlopeUnstable,
    UnsupportedFamily,
    ParseError,
};

/// Library-wide exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::TiesPresent: return "TiesPresent";
        case ErrorCode::DegenerateSize: return "DegenerateSize";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::InsufficientReps: return "InsufficientReps";
        case ErrorCode::InsufficientNullReps: return "InsufficientNullReps";
        case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
        case ErrorCode::EmptyDistribution: return "EmptyDistribution";
        case ErrorCode::ROutOfRange: return "ROutOfRange";
        case ErrorCode::ParameterOutOfDomain: return "ParameterOutOfDomain";
        case ErrorCode::MethodUnavailable: return "MethodUnavailable";
        case ErrorCode::SlopeUnstable: return "SlopeUnstable";
        case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace wrc
