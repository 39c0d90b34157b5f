#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace beamplot {

enum class ErrorCode {
    EmptyInput,
    MissingRequiredColumns,
    MalformedEncoding,
    NegativeDiff,
    FutureYear,
    EmptyDataset,
    DegenerateCanvas,
    OutOfRange,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::MissingRequiredColumns: return "MissingRequiredColumns";
        case ErrorCode::MalformedEncoding: return "MalformedEncoding";
        case ErrorCode::NegativeDiff: return "NegativeDiff";
        case ErrorCode::FutureYear: return "FutureYear";
        case ErrorCode::EmptyDataset: return "EmptyDataset";
        case ErrorCode::DegenerateCanvas: return "DegenerateCanvas";
        case ErrorCode::OutOfRange: return "OutOfRange";
    }
    return "Unknown";
}

/// Single exception type for every failure the library reports; callers
/// dispatch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message)
        , code_(code)
    {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace beamplot
