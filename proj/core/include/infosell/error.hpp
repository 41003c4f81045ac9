#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace infosell {

enum class ErrorCode {
    NonIncreasingTypes,
    NonPositiveMass,
    MassNotOne,
    NegativeAlpha,
    EmptyInput,
    IndexOutOfRange,
    UnknownFamily,
    BadParams,
    BadMixWeight,
    NotMixedCase,
    EmptyBoundary,
    NegativePayment,
    TooLarge,
    Infeasible,
    Unbounded,
    IterationLimit,
    ParseError,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code; every failure raised by the
/// library is an `infosell::Error`.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace infosell
