#pragma once

#include "infosell/model.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace infosell::cli {

enum class Command { Gen, Solve, Verify, Oracle, SingleMenu, Sweep, Curve };
enum class Format { Json, Csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
    Command command = Command::Solve;
    std::string input;
    /// Empty or "-" writes to stdout.
    std::string output;
    Format format = Format::Json;
    std::uint64_t seed = 1;

    /// gen: family name and its parameters; --grid fills N and M when unset.
    std::string family = "random";
    FamilyParams params;
    std::optional<std::size_t> grid;

    /// verify: mechanism document to check instead of solving.
    std::string mechanism;

    /// sweep
    std::size_t count = 200;
    unsigned threads = 0;  // 0 picks the hardware concurrency

    /// curve: lower, upper, mixed or pivot, plus the weight for the last two.
    std::string curve_kind = "lower";
    double curve_c = 0.5;

    /// Feasibility tolerance for verify and sweep.
    double tolerance = 1e-9;
    /// Largest accepted |closed - LP| / max(1, LP) for oracle and sweep.
    double gap_tolerance = 1e-5;
};

/// Parses argv into a config. On --help or a usage error returns the exit
/// code to use, having already printed the message.
std::optional<int> parse_args(int argc, const char* const* argv, RunConfig& config);

/// Runs one command. Returns 0 on success, 1 when a check fails and 2 on a
/// usage, parse or I/O error. Diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& err);

} // namespace infosell::cli
