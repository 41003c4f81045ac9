#include "infosell/error.hpp"

namespace infosell {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NonIncreasingTypes: return "NonIncreasingTypes";
    case ErrorCode::NonPositiveMass: return "NonPositiveMass";
    case ErrorCode::MassNotOne: return "MassNotOne";
    case ErrorCode::NegativeAlpha: return "NegativeAlpha";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::BadMixWeight: return "BadMixWeight";
    case ErrorCode::NotMixedCase: return "NotMixedCase";
    case ErrorCode::EmptyBoundary: return "EmptyBoundary";
    case ErrorCode::NegativePayment: return "NegativePayment";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace infosell
