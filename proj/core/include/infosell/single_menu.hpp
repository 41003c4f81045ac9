#pragma once

#include "infosell/model.hpp"

#include <cstddef>
#include <vector>

namespace infosell {

/// e(t_i) = sum_q g max{v(q, t_i), 0} - max{v(t_i), 0}, the value of seeing q.
double full_info_value(const Instance& inst, std::size_t i);

struct ReservePrice {
    double reserve = 0.0;
    double rev_single = 0.0;
};

/// Best posted price for full revelation. Candidates are the e(t_i) values,
/// which is exact for a discrete type distribution. Ties keep the lower price.
ReservePrice myerson_reserve(const Instance& inst);

/// Empirical monotone hazard rate check on the distribution of e(t): equal
/// values are merged, then m_k / (mass at or above value k) must not fall.
bool has_monotone_hazard(const std::vector<double>& values, const std::vector<double>& masses,
                         double tolerance = 1e-12);

struct SingleMenuReport {
    std::vector<double> e_values;
    double reserve = 0.0;
    double rev_single = 0.0;
    double rev_optimal = 0.0;
    /// sum_i f e(t_i)
    double welfare = 0.0;
    /// sum_i f max{0, v(t_i)}
    double prior_term = 0.0;
    /// rev_single / rev_optimal, or 1 when the optimum is (numerically) 0.
    double ratio = 1.0;
    bool mhr_flag = false;
};

/// Runs the closed-form solver for rev_optimal and assembles the comparison.
SingleMenuReport ratio_report(const Instance& inst);

} // namespace infosell
