#include "infosell/optimal_mechanism.hpp"

#include "infosell/error.hpp"
#include "infosell/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace infosell {

namespace {

// Relative width of the band in which v0 + v1 * phi counts as zero.
constexpr double kTieTolerance = 1e-9;
// Width of the band in which F(t_{i-1}) counts as equal to the pivot c.
constexpr double kPivotTolerance = 1e-9;
constexpr double kPaymentTolerance = 1e-9;
constexpr double kCaseTolerance = 1e-12;
constexpr int kMaxBisections = 200;
constexpr double kBracketWidth = 1e-14;

enum class Cell { Out, Tie, In };

Cell classify_cell(const State& s, double phi) {
    if (s.v1 == 0.0) return s.v0 >= 0.0 ? Cell::In : Cell::Out;
    const double score = s.v0 + s.v1 * phi;
    const double tol = kTieTolerance * (std::abs(s.v0) + s.v1 * std::abs(phi));
    if (score > tol) return Cell::In;
    if (score < -tol) return Cell::Out;
    return Cell::Tie;
}

struct Recommendation {
    std::vector<std::vector<double>> pi;
    std::vector<double> weighted;  // P(t_i)
};

Recommendation recommend(const Instance& inst, const std::vector<double>& phi, double tie_value) {
    const std::size_t n = inst.num_types();
    const std::size_t m = inst.num_states();
    Recommendation rec;
    rec.pi.assign(m, std::vector<double>(n, 0.0));
    rec.weighted.assign(n, 0.0);
    for (std::size_t q = 0; q < m; ++q) {
        const State& s = inst.states[q];
        for (std::size_t i = 0; i < n; ++i) {
            double x = 0.0;
            switch (classify_cell(s, phi[i])) {
            case Cell::In: x = 1.0; break;
            case Cell::Tie: x = tie_value; break;
            case Cell::Out: x = 0.0; break;
            }
            rec.pi[q][i] = x;
            rec.weighted[i] += x * s.g * s.v1;
        }
    }
    return rec;
}

// Utility increments u(t_i) - u(t_{i-1}) for i = 1..N-1 (entry 0 is unused).
// Below the pivot the increment uses P(t_{i-1}), above it P(t_i), and at the
// pivot the split weight interpolates.
std::vector<double> increments(const TypeGrid& grid, const std::vector<double>& weighted,
                               double c, double w) {
    std::vector<double> out(grid.size(), 0.0);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double F = grid.cdf(i - 1);
        double rate;
        if (F < c - kPivotTolerance) {
            rate = weighted[i - 1];
        } else if (F > c + kPivotTolerance) {
            rate = weighted[i];
        } else {
            rate = (1.0 - w) * weighted[i - 1] + w * weighted[i];
        }
        out[i] = grid.gap_before(i) * rate;
    }
    return out;
}

double budget(const TypeGrid& grid, const std::vector<double>& weighted, double c, double w) {
    double total = 0.0;
    for (double d : increments(grid, weighted, c, w)) total += d;
    return total;
}

double inclusive_budget(const Instance& inst, double c) {
    const auto curve = ironed_pivot(inst.types, c);
    return budget(inst.types, recommend(inst, curve.ironed, 1.0).weighted, c, 1.0);
}

double scale_of(std::initializer_list<double> xs) {
    double s = 1.0;
    for (double x : xs) s = std::max(s, std::abs(x));
    return s;
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

} // namespace

std::string_view to_string(MechanismCase tag) noexcept {
    switch (tag) {
    case MechanismCase::LowTail: return "LowTail";
    case MechanismCase::HighTail: return "HighTail";
    case MechanismCase::Mixed: return "Mixed";
    }
    return "Unknown";
}

CaseBounds case_bounds(const Instance& inst) {
    const double base = std::max(0.0, prior_value(inst, 0));
    const auto lower = ironed_lower(inst.types);
    const auto upper = ironed_upper(inst.types);
    CaseBounds b;
    b.v_low = base + budget(inst.types, recommend(inst, lower.ironed, 1.0).weighted, 1.0, 0.0);
    b.v_high = base + budget(inst.types, recommend(inst, upper.ironed, 1.0).weighted, 0.0, 1.0);
    return b;
}

CaseLabel classify(const Instance& inst) {
    const CaseBounds b = case_bounds(inst);
    const double top = prior_value(inst, inst.num_types() - 1);
    const double tol = kCaseTolerance * scale_of({top, b.v_low, b.v_high});

    CaseLabel label;
    label.v_low = b.v_low;
    label.v_high = b.v_high;
    if (top >= b.v_high - tol) {
        label.tag = MechanismCase::HighTail;
        label.c = 0.0;
        label.split_weight = 1.0;
    } else if (top <= b.v_low + tol) {
        label.tag = MechanismCase::LowTail;
        label.c = 1.0;
        label.split_weight = 0.0;
    } else {
        const MixingConstant mix = find_mixing_constant(inst);
        label.tag = MechanismCase::Mixed;
        label.c = mix.c;
        label.boundary_fraction = mix.boundary_fraction;
        label.split_weight = mix.split_weight;
    }
    return label;
}

MixingConstant find_mixing_constant(const Instance& inst) {
    const CaseBounds b = case_bounds(inst);
    const double target = prior_value(inst, inst.num_types() - 1);
    const double scale = scale_of({target, b.v_low, b.v_high});
    if (!(target > b.v_low + kCaseTolerance * scale && target < b.v_high - kCaseTolerance * scale)) {
        throw Error(ErrorCode::NotMixedCase, "v(t_N) = " + std::to_string(target) +
                                                 " is outside (V_L, V_H) = (" + std::to_string(b.v_low) +
                                                 ", " + std::to_string(b.v_high) + ")");
    }

    // The inclusive budget is non-increasing and left-continuous in c, so the
    // largest c reaching the target is the limit of the lower bracket end.
    MixingConstant out;
    double lo = 0.0;
    double hi = 1.0;
    while (out.iterations < kMaxBisections && hi - lo >= kBracketWidth) {
        ++out.iterations;
        const double mid = 0.5 * (lo + hi);
        const double y = inclusive_budget(inst, mid);
        if (y >= target) {
            lo = mid;
            if (y - target < kCaseTolerance) break;
        } else {
            hi = mid;
        }
    }
    out.c = lo;

    // Walk from the smallest to the largest budget in the optimal face at c:
    // first raise the pivot split weight, then the boundary fraction.
    const auto curve = ironed_pivot(inst.types, out.c);
    const auto strict = recommend(inst, curve.ironed, 0.0).weighted;
    const auto inclusive = recommend(inst, curve.ironed, 1.0).weighted;
    const double y00 = budget(inst.types, strict, out.c, 0.0);
    const double y01 = budget(inst.types, strict, out.c, 1.0);
    const double y11 = budget(inst.types, inclusive, out.c, 1.0);

    if (target <= y01) {
        out.boundary_fraction = 0.0;
        out.split_weight = y01 > y00 ? clamp01((target - y00) / (y01 - y00)) : 0.0;
    } else {
        out.split_weight = 1.0;
        out.boundary_fraction = y11 > y01 ? clamp01((target - y01) / (y11 - y01)) : 1.0;
    }

    const auto mixed = recommend(inst, curve.ironed, out.boundary_fraction).weighted;
    out.budget = budget(inst.types, mixed, out.c, out.split_weight);
    if (std::abs(out.budget - target) > 1e-9 * scale) {
        throw Error(ErrorCode::EmptyBoundary,
                    "boundary mass cannot close the budget gap " + std::to_string(target - out.budget) +
                        " at c = " + std::to_string(out.c));
    }
    return out;
}

ThresholdPolicy build_threshold_policy(const Instance& inst, const CaseLabel& label) {
    ThresholdPolicy policy;
    policy.tag = label.tag;
    policy.c = label.c;
    policy.split_weight = label.split_weight;
    switch (label.tag) {
    case MechanismCase::LowTail: policy.curve = ironed_lower(inst.types); break;
    case MechanismCase::HighTail: policy.curve = ironed_upper(inst.types); break;
    case MechanismCase::Mixed:
        policy.curve = ironed_pivot(inst.types, label.c);
        policy.boundary_fraction = label.boundary_fraction;
        break;
    }
    policy.theta.resize(inst.num_types());
    for (std::size_t i = 0; i < inst.num_types(); ++i) policy.theta[i] = -policy.curve.ironed[i];

    const double D = policy.boundary_fraction;
    if (label.tag == MechanismCase::Mixed && D > 0.0 && D < 1.0) {
        for (std::size_t q = 0; q < inst.num_states(); ++q) {
            for (std::size_t i = 0; i < inst.num_types(); ++i) {
                if (classify_cell(inst.states[q], policy.curve.ironed[i]) == Cell::Tie) {
                    policy.boundary_set.emplace_back(q, i);
                }
            }
        }
    }
    return policy;
}

Mechanism payments(const Instance& inst, const ThresholdPolicy& policy, const CaseLabel& label) {
    const std::size_t n = inst.num_types();
    if (policy.theta.size() != n) throw Error(ErrorCode::BadParams, "policy does not match instance");

    std::vector<double> phi(n);
    for (std::size_t i = 0; i < n; ++i) phi[i] = -policy.theta[i];
    const double tie_value = label.tag == MechanismCase::Mixed ? policy.boundary_fraction : 1.0;
    Recommendation rec = recommend(inst, phi, tie_value);

    const auto inc = increments(inst.types, rec.weighted, policy.c, policy.split_weight);
    std::vector<double> u(n, 0.0);
    if (label.tag == MechanismCase::HighTail) {
        u[n - 1] = prior_value(inst, n - 1);
        for (std::size_t i = n - 1; i > 0; --i) u[i - 1] = u[i] - inc[i];
    } else {
        for (std::size_t i = 1; i < n; ++i) u[i] = u[i - 1] + inc[i];
    }

    Mechanism mech;
    mech.pi = std::move(rec.pi);
    mech.pay.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double gross = 0.0;
        for (std::size_t q = 0; q < inst.num_states(); ++q) {
            gross += inst.states[q].g * mech.pi[q][i] * value(inst, q, i);
        }
        mech.pay[i] = gross - u[i];
        if (mech.pay[i] < -kPaymentTolerance) {
            throw Error(ErrorCode::NegativePayment, "payment " + std::to_string(mech.pay[i]) +
                                                        " at type index " + std::to_string(i));
        }
    }
    return mech;
}

Solution solve(const Instance& inst) {
    Solution sol;
    sol.label = classify(inst);
    sol.policy = build_threshold_policy(inst, sol.label);
    sol.mechanism = payments(inst, sol.policy, sol.label);

    Diagnostics& d = sol.diagnostics;
    d.revenue = revenue(inst, sol.mechanism);
    d.v_low = sol.label.v_low;
    d.v_high = sol.label.v_high;
    d.c = sol.label.c;
    d.boundary_fraction = sol.label.boundary_fraction;
    d.split_weight = sol.label.split_weight;
    for (std::size_t i = 0; i < inst.num_types(); ++i) {
        d.weighted_prob.push_back(weighted_prob(inst, sol.mechanism, i));
        d.utility.push_back(utility(inst, sol.mechanism, i));
        d.surplus.push_back(surplus(inst, sol.mechanism, i));
    }
    return sol;
}

} // namespace infosell
