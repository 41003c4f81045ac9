#pragma once

#include "infosell/model.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace infosell {

/// P(t_i) = sum_q pi(q, t_i) g(q) v1(q)
double weighted_prob(const Instance& inst, const Mechanism& mech, std::size_t i);

/// u(t_i) = sum_q g(q) pi(q, t_i) v(q, t_i) - p(t_i)
double utility(const Instance& inst, const Mechanism& mech, std::size_t i);

/// s(t_i) = u(t_i) - max{0, v(t_i)}
double surplus(const Instance& inst, const Mechanism& mech, std::size_t i);

/// sum_i f(t_i) p(t_i)
double revenue(const Instance& inst, const Mechanism& mech);

struct IcViolation {
    std::size_t truth = 0;     // true type index
    std::size_t report = 0;    // misreported type index
    double gain = 0.0;         // deviation payoff minus truthful utility
};

/// Constraint-by-constraint verdict on a mechanism. Every "worst" or "gap"
/// field is signed so that a value <= tolerance (for gaps/violations) or
/// >= -tolerance (for slacks) means the constraint holds.
struct FeasibilityReport {
    /// max_i P(t_{i-1}) - P(t_i), clamped at 0
    double p_monotone_violation = 0.0;
    /// max_i distance of u(t_i) - u(t_{i-1}) outside
    /// [gap_i P(t_{i-1}), gap_i P(t_i)]
    double utility_identity_gap = 0.0;
    /// u(t_1)
    double ir_low = 0.0;
    /// u(t_N) - v(t_N)
    double ir_high = 0.0;
    /// min_i u(t_i) - max{0, v(t_i)}
    double ir_worst = 0.0;
    double min_payment = 0.0;
    /// min_i min{ sum pi g v, -sum (1 - pi) g v }
    double obedience_worst = 0.0;
    /// Largest gain from misreporting under the linear (follow-the-signal) form.
    IcViolation ic_worst;
    /// Largest gain when the deviator also best-responds to each signal.
    IcViolation ic_best_response_worst;
    /// Largest step against the increase-then-decrease shape of s(t).
    double surplus_shape_violation = 0.0;
    bool surplus_shape_ok = true;
    double tolerance = 1e-9;

    bool p_monotone_signal() const { return p_monotone_violation <= tolerance; }

    /// Names of the checks that fail at `tolerance`; empty when feasible.
    std::vector<std::string> failures() const;
    bool feasible() const { return failures().empty(); }
};

FeasibilityReport check_feasible(const Instance& inst, const Mechanism& mech, double tolerance = 1e-9);

} // namespace infosell
