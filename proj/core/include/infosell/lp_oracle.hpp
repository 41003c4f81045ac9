#pragma once

#include "infosell/feasibility.hpp"
#include "infosell/model.hpp"

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace infosell {

/// Upper bound on N * M accepted by build_lp.
inline constexpr std::size_t kMaxLpCells = 2000;

enum class RowSense { LessEqual, GreaterEqual, Equal };

struct LpRow {
    std::string name;
    std::vector<double> coeffs;  // dense, one per variable
    RowSense sense = RowSense::GreaterEqual;
    double rhs = 0.0;
};

struct VariableBounds {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
};

/// Dense LP `maximize objective . x` over pi(q, t_i) and p(t_i). Variables are
/// ordered type-major: pi(q, t_i) at i * M + q, then p(t_i) at N * M + i.
struct LinearProgram {
    std::size_t num_types = 0;
    std::size_t num_states = 0;
    std::vector<std::string> variable_names;
    std::vector<double> objective;
    std::vector<VariableBounds> bounds;
    std::vector<LpRow> rows;

    std::size_t num_variables() const noexcept { return objective.size(); }
    std::size_t pi_index(std::size_t q, std::size_t i) const noexcept { return i * num_states + q; }
    std::size_t pay_index(std::size_t i) const noexcept { return num_types * num_states + i; }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string_view to_string(LpStatus status) noexcept;

struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    double objective = 0.0;
    std::vector<double> x;
    int iterations = 0;
};

/// Two-phase primal simplex on a dense tableau. The entering column follows
/// Bland's rule; ratio ties go to the largest pivot entry, then the lowest
/// basic index.
/// Every variable needs a finite lower bound.
LpSolution simplex_maximize(const LinearProgram& lp, int max_iterations = 200000);

/// Revenue maximization over direct menus: one IR row per type, one
/// linear IC row per ordered pair of distinct types, 0 <= pi <= 1, p >= 0.
/// Throws TooLarge when N * M exceeds kMaxLpCells.
LinearProgram build_lp(const Instance& inst);

struct OracleSolution {
    LpStatus status = LpStatus::Optimal;
    double revenue = 0.0;
    Mechanism mechanism;
    int iterations = 0;
};

/// Solves a program produced by build_lp and unpacks the menu. Throws
/// Infeasible, Unbounded or IterationLimit when no optimum is found.
OracleSolution solve_lp(const LinearProgram& lp);

/// build_lp followed by solve_lp.
OracleSolution solve_oracle(const Instance& inst);

struct OracleReport {
    double closed_revenue = 0.0;
    double oracle_revenue = 0.0;
    /// closed_revenue - oracle_revenue
    double gap = 0.0;
    /// |gap| / max(1, oracle_revenue)
    double relative_gap = 0.0;
    /// oracle_revenue >= closed_revenue - 1e-7
    bool dominance_ok = true;
    /// The LP menu checked at 1e-7.
    FeasibilityReport oracle_feasibility;
};

OracleReport compare(const Instance& inst, const Mechanism& closed, const OracleSolution& oracle);

/// Line-oriented text dump: a header, one `var` line per variable with its
/// bounds and objective coefficient, then one `row` line per constraint
/// listing its non-zero coefficients in variable order.
void write_lp(std::ostream& os, const LinearProgram& lp);

} // namespace infosell
