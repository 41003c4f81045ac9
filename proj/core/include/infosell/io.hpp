#pragma once

#include "infosell/feasibility.hpp"
#include "infosell/lp_oracle.hpp"
#include "infosell/model.hpp"
#include "infosell/optimal_mechanism.hpp"
#include "infosell/single_menu.hpp"
#include "infosell/virtual_value.hpp"

#include <string>
#include <string_view>

namespace infosell {

/// Every real number written by this module is rounded to this many
/// significant digits, so output files are stable and diffable.
inline constexpr int kFloatDigits = 12;

/// Rounds x to kFloatDigits significant digits.
double round_sig(double x);

std::string read_text_file(const std::string& path);
/// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_text_file(const std::string& path, std::string_view text);

/// {"types":[{"t","f"}], "states":[{"label","g","v1","v0"}]}. Unknown keys
/// are rejected. Throws ParseError on malformed input and the validation
/// codes on bad data.
Instance parse_instance(std::string_view json);
std::string instance_to_json(const Instance& inst);

/// Reads the "pi" and "pay" fields of a mechanism document and ignores
/// everything else, so solve output can be fed straight back to verify.
Mechanism parse_mechanism(std::string_view json);

/// {"case","c","D","split_weight","V_L","V_H","revenue","theta","pi","pay",
///  "P","u","s"}
std::string solution_to_json(const Solution& sol);
/// Columns t, theta, pay, P, u, s.
std::string solution_to_csv(const Instance& inst, const Solution& sol);

/// Columns t, F, raw, ironed.
std::string curve_to_csv(const TypeGrid& grid, const VirtualCurve& curve);

std::string feasibility_to_json(const FeasibilityReport& report);
std::string oracle_to_json(const OracleReport& report);
std::string single_menu_to_json(const SingleMenuReport& report);
/// Columns t, f, e.
std::string single_menu_to_csv(const Instance& inst, const SingleMenuReport& report);

} // namespace infosell
