#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sns {

// Stable, machine-readable failure categories. The CLI prints the name and
// maps each category to its own exit code.
enum class ErrorCode {
    DimensionError = 2,
    ZeroVarianceColumn,
    NumericalError,
    SingularCorrection,
    NotConverged,
    InvalidWeights,
    EmptyInitializer,
    InfeasibleSpec,
    NotPositiveDefinite,
    DegenerateTruth,
    NonFiniteInput,
    ParseError,
    IoError,
    UsageError,
};

inline constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
        case ErrorCode::DimensionError:      return "DimensionError";
        case ErrorCode::ZeroVarianceColumn:  return "ZeroVarianceColumn";
        case ErrorCode::NumericalError:      return "NumericalError";
        case ErrorCode::SingularCorrection:  return "SingularCorrection";
        case ErrorCode::NotConverged:        return "NotConverged";
        case ErrorCode::InvalidWeights:      return "InvalidWeights";
        case ErrorCode::EmptyInitializer:    return "EmptyInitializer";
        case ErrorCode::InfeasibleSpec:      return "InfeasibleSpec";
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::DegenerateTruth:     return "DegenerateTruth";
        case ErrorCode::NonFiniteInput:      return "NonFiniteInput";
        case ErrorCode::ParseError:          return "ParseError";
        case ErrorCode::IoError:             return "IoError";
        case ErrorCode::UsageError:          return "UsageError";
    }
    return "Unknown";
}

class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what)
        , code_(code)
    {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Carries the offending column so callers can report it.
class ZeroVarianceColumn : public Error
{
public:
    explicit ZeroVarianceColumn(long column)
        : Error(ErrorCode::ZeroVarianceColumn,
                "column " + std::to_string(column) + " is constant")
        , column_(column)
    {}

    long column() const noexcept { return column_; }

private:
    long column_;
};

} // namespace sns
