#pragma once

#include "infosell/model.hpp"
#include "infosell/virtual_value.hpp"

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

namespace infosell {

/// Which participation constraint binds at the optimum.
///  - LowTail:  u(t_1) = 0, thresholds from the ironed lower virtual value.
///  - HighTail: u(t_N) = v(t_N), thresholds from the ironed upper virtual value.
///  - Mixed:    both bind; thresholds from the ironed pivot virtual value at c.
enum class MechanismCase { LowTail, HighTail, Mixed };

std::string_view to_string(MechanismCase tag) noexcept;

struct CaseBounds {
    double v_low = 0.0;   // V_L
    double v_high = 0.0;  // V_H
};

struct CaseLabel {
    MechanismCase tag = MechanismCase::LowTail;
    double v_low = 0.0;
    double v_high = 0.0;
    /// Pivot quantile. 1 for LowTail, 0 for HighTail, in (0, 1) for Mixed.
    double c = 1.0;
    /// Recommendation probability D on (state, type) cells whose ratio sits
    /// exactly on the threshold (Mixed only).
    double boundary_fraction = 0.0;
    /// Weight on P(t_i) versus P(t_{i-1}) in the utility increment between
    /// t_{i-1} and t_i when F(t_{i-1}) == c (Mixed only).
    double split_weight = 0.0;
};

struct MixingConstant {
    double c = 0.0;
    double boundary_fraction = 0.0;
    double split_weight = 0.0;
    /// Total utility increment u(t_N) - u(t_1) at the returned (c, D, w).
    double budget = 0.0;
    int iterations = 0;
};

struct ThresholdPolicy {
    MechanismCase tag = MechanismCase::LowTail;
    /// theta[i] = -phi^+(t_i); recommend when rho(q) >= theta[i].
    std::vector<double> theta;
    double c = 1.0;
    double boundary_fraction = 0.0;
    double split_weight = 0.0;
    /// (state, type) cells recommended with probability boundary_fraction.
    /// Non-empty only when 0 < boundary_fraction < 1.
    std::vector<std::pair<std::size_t, std::size_t>> boundary_set;
    /// The curve the thresholds were read from.
    VirtualCurve curve;
};

struct Diagnostics {
    double revenue = 0.0;
    double v_low = 0.0;
    double v_high = 0.0;
    double c = 1.0;
    double boundary_fraction = 0.0;
    double split_weight = 0.0;
    std::vector<double> weighted_prob;  // P(t_i)
    std::vector<double> utility;        // u(t_i)
    std::vector<double> surplus;        // s(t_i)
};

struct Solution {
    Mechanism mechanism;
    CaseLabel label;
    ThresholdPolicy policy;
    Diagnostics diagnostics;
};

/// V_L and V_H: max{0, v(t_1)} plus the total utility increment of the
/// threshold mechanism on the ironed lower (increments at P(t_{i-1})) or
/// ironed upper (increments at P(t_i)) virtual value.
CaseBounds case_bounds(const Instance& inst);

/// HighTail when v(t_N) >= V_H, otherwise LowTail when v(t_N) <= V_L,
/// otherwise Mixed with (c, D, w) from find_mixing_constant.
CaseLabel classify(const Instance& inst);

/// Largest pivot c whose inclusive budget still reaches v(t_N), followed by
/// the boundary randomization that makes the budget exact. Throws
/// NotMixedCase unless V_L < v(t_N) < V_H.
MixingConstant find_mixing_constant(const Instance& inst);

ThresholdPolicy build_threshold_policy(const Instance& inst, const CaseLabel& label);

/// Recommendation matrix from the policy and payments from the binding
/// participation constraint. Throws NegativePayment if any price falls
/// below -1e-9.
Mechanism payments(const Instance& inst, const ThresholdPolicy& policy, const CaseLabel& label);

Solution solve(const Instance& inst);

} // namespace infosell
