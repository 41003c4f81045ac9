#include "infosell/single_menu.hpp"

#include "infosell/error.hpp"
#include "infosell/optimal_mechanism.hpp"

#include <algorithm>
#include <numeric>

namespace infosell {

namespace {

// Optimal revenue at or below this is rounding noise and the ratio is 1.
constexpr double kNegligibleRevenue = 1e-12;

} // namespace

double full_info_value(const Instance& inst, std::size_t i) {
    if (i >= inst.num_types()) throw Error(ErrorCode::IndexOutOfRange, "type index " + std::to_string(i));
    double informed = 0.0;
    for (std::size_t q = 0; q < inst.num_states(); ++q) {
        informed += inst.states[q].g * std::max(value(inst, q, i), 0.0);
    }
    return std::max(0.0, informed - std::max(prior_value(inst, i), 0.0));
}

ReservePrice myerson_reserve(const Instance& inst) {
    const std::size_t n = inst.num_types();
    std::vector<double> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = full_info_value(inst, i);

    ReservePrice best;
    for (std::size_t k = 0; k < n; ++k) {
        const double r = e[k];
        double mass = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (e[i] >= r) mass += inst.types.f(i);
        }
        const double rev = r * mass;
        if (rev > best.rev_single || (rev == best.rev_single && r < best.reserve)) {
            best.reserve = r;
            best.rev_single = rev;
        }
    }
    return best;
}

bool has_monotone_hazard(const std::vector<double>& values, const std::vector<double>& masses,
                         double tolerance) {
    if (values.size() != masses.size()) throw Error(ErrorCode::BadParams, "values and masses differ in length");
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> merged;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k > 0 && values[order[k]] == values[order[k - 1]]) {
            merged.back() += masses[order[k]];
        } else {
            merged.push_back(masses[order[k]]);
        }
    }

    double survival = std::accumulate(merged.begin(), merged.end(), 0.0);
    double last = 0.0;
    for (double m : merged) {
        const double hazard = m / survival;
        if (hazard < last - tolerance) return false;
        last = hazard;
        survival -= m;
    }
    return true;
}

SingleMenuReport ratio_report(const Instance& inst) {
    SingleMenuReport rep;
    const std::size_t n = inst.num_types();
    rep.e_values.resize(n);
    std::vector<double> masses(n);
    for (std::size_t i = 0; i < n; ++i) {
        rep.e_values[i] = full_info_value(inst, i);
        masses[i] = inst.types.f(i);
        rep.welfare += masses[i] * rep.e_values[i];
        rep.prior_term += masses[i] * std::max(0.0, prior_value(inst, i));
    }
    const ReservePrice rp = myerson_reserve(inst);
    rep.reserve = rp.reserve;
    rep.rev_single = rp.rev_single;
    rep.rev_optimal = solve(inst).diagnostics.revenue;
    rep.ratio = rep.rev_optimal > kNegligibleRevenue ? rep.rev_single / rep.rev_optimal : 1.0;
    rep.mhr_flag = has_monotone_hazard(rep.e_values, masses);
    return rep;
}

} // namespace infosell
