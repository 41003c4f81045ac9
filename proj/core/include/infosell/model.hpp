#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace infosell {

/// Mass tolerance for a validated distribution.
inline constexpr double kMassTolerance = 1e-12;
/// Inputs whose total mass is off by at most this much are renormalized;
/// anything further off is rejected.
inline constexpr double kRenormalizeTolerance = 1e-9;

struct TypePoint {
    double t = 0.0;
    double f = 0.0;
};

/// Buyer types t_1 < ... < t_N with probability masses f.
///
/// Index conventions: F(i) = sum_{j<=i} f_j, F before the first type is 0,
/// and gaps past either end are zero (t_0 := t_1, t_{N+1} := t_N).
class TypeGrid {
public:
    /// Validates and (if within kRenormalizeTolerance) renormalizes.
    explicit TypeGrid(std::vector<TypePoint> points);

    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<TypePoint>& points() const noexcept { return points_; }

    double t(std::size_t i) const { return points_.at(i).t; }
    double f(std::size_t i) const { return points_.at(i).f; }
    /// F(t_i); exactly 1 at the last index.
    double cdf(std::size_t i) const { return cdf_.at(i); }
    /// F(t_{i-1}); 0 at the first index.
    double cdf_before(std::size_t i) const { return i == 0 ? 0.0 : cdf_.at(i - 1); }
    /// t_{i+1} - t_i, zero at the last index.
    double gap_after(std::size_t i) const;
    /// t_i - t_{i-1}, zero at the first index.
    double gap_before(std::size_t i) const;

    double front() const noexcept { return points_.front().t; }
    double back() const noexcept { return points_.back().t; }

private:
    std::vector<TypePoint> points_;
    std::vector<double> cdf_;
};

/// One state of the world q with prior mass g and affine payoff
/// v(q, t) = v1 * t + v0 for the active action.
struct State {
    std::string label;
    double g = 0.0;
    double v1 = 0.0;
    double v0 = 0.0;

    /// rho(q) = v0 / v1; undefined when v1 == 0.
    std::optional<double> ratio() const {
        if (v1 > 0.0) return v0 / v1;
        return std::nullopt;
    }
};

class StateSpace {
public:
    explicit StateSpace(std::vector<State> states);

    std::size_t size() const noexcept { return states_.size(); }
    const std::vector<State>& states() const noexcept { return states_; }
    const State& operator[](std::size_t q) const { return states_.at(q); }

    /// sum_q g(q) v1(q)
    double mean_slope() const noexcept { return mean_slope_; }
    /// sum_q g(q) v0(q)
    double mean_intercept() const noexcept { return mean_intercept_; }

private:
    std::vector<State> states_;
    double mean_slope_ = 0.0;
    double mean_intercept_ = 0.0;
};

/// The full problem datum. Immutable after construction.
struct Instance {
    TypeGrid types;
    StateSpace states;

    std::size_t num_types() const noexcept { return types.size(); }
    std::size_t num_states() const noexcept { return states.size(); }
};

/// A direct menu: pi[q][i] is the probability of recommending the active
/// action in state q to reported type i, pay[i] the price charged to type i.
struct Mechanism {
    std::vector<std::vector<double>> pi;
    std::vector<double> pay;

    std::size_t num_states() const noexcept { return pi.size(); }
    std::size_t num_types() const noexcept { return pay.size(); }
};

/// Zero-initialized menu sized for `inst`.
Mechanism empty_mechanism(const Instance& inst);

/// Throws BadParams if the shape does not match or any pi entry leaves [0, 1].
void check_mechanism_shape(const Instance& inst, const Mechanism& mech);

/// Unvalidated instance data, as parsed from a file or produced by a builder.
struct RawInstance {
    std::vector<TypePoint> types;
    std::vector<State> states;
};

Instance validate_instance(RawInstance raw);

/// v(q, t_i) = v1(q) t_i + v0(q)
double value(const Instance& inst, std::size_t q, std::size_t i);

/// Prior expected value of the active action, v(t_i) = sum_q g(q) v(q, t_i).
double prior_value(const Instance& inst, std::size_t i);

// ---------------------------------------------------------------------------
// Instance families
// ---------------------------------------------------------------------------

/// v(q, t) = q t + v0 with t and q on evenly spaced grids (endpoints
/// included) carrying equal masses.
struct UniformProductParams {
    double t_lo = 0.0;
    double t_hi = 1.0;
    double q_lo = 0.0;
    double q_hi = 1.0;
    double v0 = 0.0;
    std::size_t num_types = 2;
    std::size_t num_states = 2;
};

Instance uniform_product(const UniformProductParams& params);

/// v(q, t) = t - q with q uniform on [0, C] and F(t) = 1 - 2C/t^2 on
/// [sqrt(2C), C/2) plus the residual atom at t = C/2. The continuous part
/// is cut into `num_types - 1` equal-width cells represented by their left
/// endpoints, which keeps Pr(t >= t_i) exact at every grid point.
Instance equal_revenue_example(double C, std::size_t num_types, std::size_t num_states = 0);

/// The three-type, three-state table instance: t in {3,4,5}, q in {1,2,3},
/// v(q,t) = q t - 6, all masses 1/3.
Instance table_instance();

/// Case-1 family: t ~ U[2,3], q ~ U[0,1], v = q t - 2.
Instance low_tail_example(std::size_t num_types, std::size_t num_states);
/// Case-2 family: t ~ U[3,6], q ~ U[1,4], v = q t - 6.
Instance high_tail_example(std::size_t num_types, std::size_t num_states);
/// Case-3 family: t ~ U[0,10], q ~ U[0,10], v = q t - 30.
Instance mixed_example(std::size_t num_types, std::size_t num_states);

/// Random small instance: N, M ~ U{2..6}, sorted U(0,10) types, flat
/// Dirichlet masses, v1 ~ U(0,2), v0 ~ U(-10,2).
Instance random_instance(std::mt19937_64& rng);

using FamilyParams = std::map<std::string, double, std::less<>>;

/// Name-based dispatch used by the CLI. Known names: uniform_product,
/// equal_revenue_example, table, low_tail, high_tail, mixed, random.
Instance generate_family(std::string_view name, const FamilyParams& params);

} // namespace infosell
