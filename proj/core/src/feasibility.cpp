#include "infosell/feasibility.hpp"

#include "infosell/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace infosell {

namespace {

// sum_q g(q) pi(q, t_report) v(q, t_truth)
double active_value(const Instance& inst, const Mechanism& mech, std::size_t report, std::size_t truth) {
    double acc = 0.0;
    for (std::size_t q = 0; q < inst.num_states(); ++q) {
        acc += inst.states[q].g * mech.pi[q][report] * value(inst, q, truth);
    }
    return acc;
}

void check_index(const Instance& inst, const Mechanism& mech, std::size_t i) {
    if (i >= inst.num_types() || i >= mech.num_types()) {
        throw Error(ErrorCode::IndexOutOfRange, "type index " + std::to_string(i));
    }
}

} // namespace

double weighted_prob(const Instance& inst, const Mechanism& mech, std::size_t i) {
    check_index(inst, mech, i);
    double acc = 0.0;
    for (std::size_t q = 0; q < inst.num_states(); ++q) {
        acc += mech.pi[q][i] * inst.states[q].g * inst.states[q].v1;
    }
    return acc;
}

double utility(const Instance& inst, const Mechanism& mech, std::size_t i) {
    check_index(inst, mech, i);
    return active_value(inst, mech, i, i) - mech.pay[i];
}

double surplus(const Instance& inst, const Mechanism& mech, std::size_t i) {
    return utility(inst, mech, i) - std::max(0.0, prior_value(inst, i));
}

double revenue(const Instance& inst, const Mechanism& mech) {
    if (mech.num_types() != inst.num_types()) {
        throw Error(ErrorCode::BadParams, "mechanism shape does not match instance");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < inst.num_types(); ++i) acc += inst.types.f(i) * mech.pay[i];
    return acc;
}

std::vector<std::string> FeasibilityReport::failures() const {
    std::vector<std::string> out;
    if (p_monotone_violation > tolerance) out.emplace_back("signal_monotonicity");
    if (utility_identity_gap > tolerance) out.emplace_back("utility_identity");
    if (ir_low < -tolerance) out.emplace_back("ir_low");
    if (ir_high < -tolerance) out.emplace_back("ir_high");
    if (ir_worst < -tolerance) out.emplace_back("ir");
    if (min_payment < -tolerance) out.emplace_back("non_negative_payment");
    if (obedience_worst < -tolerance) out.emplace_back("obedience");
    if (ic_worst.gain > tolerance) out.emplace_back("incentive_compatibility");
    if (ic_best_response_worst.gain > tolerance) out.emplace_back("incentive_compatibility_best_response");
    if (!surplus_shape_ok) out.emplace_back("surplus_shape");
    return out;
}

FeasibilityReport check_feasible(const Instance& inst, const Mechanism& mech, double tolerance) {
    check_mechanism_shape(inst, mech);
    const std::size_t n = inst.num_types();
    const TypeGrid& grid = inst.types;

    std::vector<double> P(n), u(n), v(n), s(n);
    for (std::size_t i = 0; i < n; ++i) {
        P[i] = weighted_prob(inst, mech, i);
        u[i] = utility(inst, mech, i);
        v[i] = prior_value(inst, i);
        s[i] = u[i] - std::max(0.0, v[i]);
    }

    FeasibilityReport r;
    r.tolerance = tolerance;
    r.ir_low = u[0];
    r.ir_high = u[n - 1] - v[n - 1];
    r.ir_worst = std::numeric_limits<double>::infinity();
    r.min_payment = std::numeric_limits<double>::infinity();
    r.obedience_worst = std::numeric_limits<double>::infinity();
    r.ic_worst.gain = -std::numeric_limits<double>::infinity();
    r.ic_best_response_worst.gain = -std::numeric_limits<double>::infinity();

    for (std::size_t i = 0; i < n; ++i) {
        r.ir_worst = std::min(r.ir_worst, s[i]);
        r.min_payment = std::min(r.min_payment, mech.pay[i]);
        const double active = active_value(inst, mech, i, i);
        r.obedience_worst = std::min({r.obedience_worst, active, -(v[i] - active)});

        if (i > 0) {
            r.p_monotone_violation = std::max(r.p_monotone_violation, P[i - 1] - P[i]);
            const double step = u[i] - u[i - 1];
            const double lo = grid.gap_before(i) * P[i - 1];
            const double hi = grid.gap_before(i) * P[i];
            const double outside = std::max(lo - step, step - hi);
            r.utility_identity_gap = std::max(r.utility_identity_gap, outside);
        }
    }

    for (std::size_t truth = 0; truth < n; ++truth) {
        for (std::size_t report = 0; report < n; ++report) {
            if (report == truth) continue;
            const double va = active_value(inst, mech, report, truth);
            const double linear = va - mech.pay[report] - u[truth];
            if (linear > r.ic_worst.gain) r.ic_worst = {truth, report, linear};
            const double best =
                std::max(va, 0.0) + std::max(v[truth] - va, 0.0) - mech.pay[report] - u[truth];
            if (best > r.ic_best_response_worst.gain) r.ic_best_response_worst = {truth, report, best};
        }
    }
    if (n == 1) {
        r.ic_worst.gain = 0.0;
        r.ic_best_response_worst.gain = 0.0;
    }

    // Surplus rises up to the first type with v >= 0 and falls after it.
    std::size_t split = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] >= 0.0) {
            split = i;
            break;
        }
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double step = s[i] - s[i - 1];
        if (i < split) {
            r.surplus_shape_violation = std::max(r.surplus_shape_violation, -step);
        } else if (i > split) {
            r.surplus_shape_violation = std::max(r.surplus_shape_violation, step);
        }
    }
    r.surplus_shape_ok = r.surplus_shape_violation <= tolerance;
    return r;
}

} // namespace infosell
