#include "infosell/model.hpp"

#include "infosell/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace infosell {

namespace {

// Checks the total against 1 and rescales in place when it is close enough.
template <typename Range, typename Mass>
void normalize_masses(Range& items, Mass mass, const char* what) {
    double total = 0.0;
    for (auto& item : items) {
        const double m = mass(item);
        if (!(m > 0.0) || !std::isfinite(m)) {
            throw Error(ErrorCode::NonPositiveMass,
                        std::string(what) + " mass must be positive, got " + std::to_string(m));
        }
        total += m;
    }
    if (std::abs(total - 1.0) > kRenormalizeTolerance) {
        throw Error(ErrorCode::MassNotOne,
                    std::string(what) + " masses sum to " + std::to_string(total));
    }
    if (total != 1.0) {
        for (auto& item : items) mass(item) /= total;
    }
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
    out.back() = hi;
    return out;
}

std::string state_label(std::size_t j) { return "q" + std::to_string(j + 1); }

} // namespace

TypeGrid::TypeGrid(std::vector<TypePoint> points) : points_(std::move(points)) {
    if (points_.empty()) throw Error(ErrorCode::EmptyInput, "type grid has no points");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].t)) throw Error(ErrorCode::BadParams, "non-finite type");
        if (i > 0 && !(points_[i].t > points_[i - 1].t)) {
            throw Error(ErrorCode::NonIncreasingTypes,
                        "type " + std::to_string(i) + " does not exceed its predecessor");
        }
    }
    normalize_masses(points_, [](TypePoint& p) -> double& { return p.f; }, "type");

    cdf_.resize(points_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        acc += points_[i].f;
        cdf_[i] = std::min(acc, 1.0);
    }
    cdf_.back() = 1.0;
}

double TypeGrid::gap_after(std::size_t i) const {
    if (i + 1 >= points_.size()) return 0.0;
    return points_[i + 1].t - points_[i].t;
}

double TypeGrid::gap_before(std::size_t i) const {
    if (i == 0 || i >= points_.size()) return 0.0;
    return points_[i].t - points_[i - 1].t;
}

StateSpace::StateSpace(std::vector<State> states) : states_(std::move(states)) {
    if (states_.empty()) throw Error(ErrorCode::EmptyInput, "state space has no states");
    for (const auto& s : states_) {
        if (!std::isfinite(s.v1) || !std::isfinite(s.v0)) {
            throw Error(ErrorCode::BadParams, "non-finite payoff coefficient in state " + s.label);
        }
        if (s.v1 < 0.0) {
            throw Error(ErrorCode::NegativeAlpha, "state " + s.label + " has negative v1");
        }
    }
    normalize_masses(states_, [](State& s) -> double& { return s.g; }, "state");
    for (const auto& s : states_) {
        mean_slope_ += s.g * s.v1;
        mean_intercept_ += s.g * s.v0;
    }
}

Instance validate_instance(RawInstance raw) {
    return Instance{TypeGrid(std::move(raw.types)), StateSpace(std::move(raw.states))};
}

Mechanism empty_mechanism(const Instance& inst) {
    Mechanism mech;
    mech.pi.assign(inst.num_states(), std::vector<double>(inst.num_types(), 0.0));
    mech.pay.assign(inst.num_types(), 0.0);
    return mech;
}

void check_mechanism_shape(const Instance& inst, const Mechanism& mech) {
    if (mech.pay.size() != inst.num_types() || mech.pi.size() != inst.num_states()) {
        throw Error(ErrorCode::BadParams, "mechanism shape does not match instance");
    }
    for (const auto& row : mech.pi) {
        if (row.size() != inst.num_types()) {
            throw Error(ErrorCode::BadParams, "mechanism row length does not match type count");
        }
        for (double x : row) {
            if (!(x >= 0.0 && x <= 1.0)) {
                throw Error(ErrorCode::BadParams, "recommendation probability outside [0, 1]");
            }
        }
    }
    for (double p : mech.pay) {
        if (!std::isfinite(p)) throw Error(ErrorCode::BadParams, "non-finite payment");
    }
}

double value(const Instance& inst, std::size_t q, std::size_t i) {
    if (q >= inst.num_states() || i >= inst.num_types()) {
        throw Error(ErrorCode::IndexOutOfRange, "value(" + std::to_string(q) + ", " +
                                                    std::to_string(i) + ")");
    }
    const State& s = inst.states[q];
    return s.v1 * inst.types.t(i) + s.v0;
}

double prior_value(const Instance& inst, std::size_t i) {
    if (i >= inst.num_types()) {
        throw Error(ErrorCode::IndexOutOfRange, "prior_value(" + std::to_string(i) + ")");
    }
    double acc = 0.0;
    for (std::size_t q = 0; q < inst.num_states(); ++q) acc += inst.states[q].g * value(inst, q, i);
    return acc;
}

Instance uniform_product(const UniformProductParams& p) {
    if (p.num_types == 0 || p.num_states == 0) {
        throw Error(ErrorCode::BadParams, "grid sizes must be positive");
    }
    if (!(p.t_hi > p.t_lo) && p.num_types > 1) throw Error(ErrorCode::BadParams, "empty t range");
    if (!(p.q_hi >= p.q_lo)) throw Error(ErrorCode::BadParams, "empty q range");
    if (p.q_lo < 0.0) throw Error(ErrorCode::BadParams, "q range must be non-negative (v1 = q)");

    RawInstance raw;
    const double f = 1.0 / static_cast<double>(p.num_types);
    for (double t : linspace(p.t_lo, p.t_hi, p.num_types)) raw.types.push_back({t, f});
    const double g = 1.0 / static_cast<double>(p.num_states);
    const auto qs = linspace(p.q_lo, p.q_hi, p.num_states);
    for (std::size_t j = 0; j < qs.size(); ++j) raw.states.push_back({state_label(j), g, qs[j], p.v0});
    return validate_instance(std::move(raw));
}

Instance equal_revenue_example(double C, std::size_t num_types, std::size_t num_states) {
    if (!(C > 8.0)) throw Error(ErrorCode::BadParams, "equal revenue example needs C > 8");
    if (num_types < 2) throw Error(ErrorCode::BadParams, "equal revenue example needs N >= 2");
    if (num_states == 0) num_states = num_types;

    const auto cdf = [C](double t) { return 1.0 - 2.0 * C / (t * t); };
    const double lo = std::sqrt(2.0 * C);
    const double hi = C / 2.0;
    const std::size_t cells = num_types - 1;
    const double width = (hi - lo) / static_cast<double>(cells);

    RawInstance raw;
    for (std::size_t k = 0; k < cells; ++k) {
        const double a = lo + width * static_cast<double>(k);
        const double b = (k + 1 == cells) ? hi : lo + width * static_cast<double>(k + 1);
        raw.types.push_back({a, cdf(b) - cdf(a)});
    }
    raw.types.push_back({hi, 8.0 / C});

    const double g = 1.0 / static_cast<double>(num_states);
    const double h = C / static_cast<double>(num_states);
    for (std::size_t j = 0; j < num_states; ++j) {
        const double q = h * (static_cast<double>(j) + 0.5);
        raw.states.push_back({state_label(j), g, 1.0, -q});
    }
    return validate_instance(std::move(raw));
}

Instance table_instance() {
    RawInstance raw;
    for (double t : {3.0, 4.0, 5.0}) raw.types.push_back({t, 1.0 / 3.0});
    for (int q = 1; q <= 3; ++q) {
        raw.states.push_back({state_label(static_cast<std::size_t>(q - 1)), 1.0 / 3.0,
                              static_cast<double>(q), -6.0});
    }
    return validate_instance(std::move(raw));
}

Instance low_tail_example(std::size_t n, std::size_t m) {
    return uniform_product({2.0, 3.0, 0.0, 1.0, -2.0, n, m});
}

Instance high_tail_example(std::size_t n, std::size_t m) {
    return uniform_product({3.0, 6.0, 1.0, 4.0, -6.0, n, m});
}

Instance mixed_example(std::size_t n, std::size_t m) {
    return uniform_product({0.0, 10.0, 0.0, 10.0, -30.0, n, m});
}

Instance random_instance(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> size_dist(2, 6);
    std::uniform_real_distribution<double> type_dist(0.0, 10.0);
    std::uniform_real_distribution<double> slope_dist(0.0, 2.0);
    std::uniform_real_distribution<double> intercept_dist(-10.0, 2.0);
    std::exponential_distribution<double> dirichlet(1.0);

    const std::size_t n = size_dist(rng);
    const std::size_t m = size_dist(rng);

    std::vector<double> ts;
    while (ts.size() < n) {
        ts.clear();
        for (std::size_t i = 0; i < n; ++i) ts.push_back(type_dist(rng));
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    }

    const auto simplex = [&](std::size_t k) {
        std::vector<double> w(k);
        for (auto& x : w) x = std::max(dirichlet(rng), 1e-12);
        const double total = std::accumulate(w.begin(), w.end(), 0.0);
        for (auto& x : w) x /= total;
        return w;
    };

    RawInstance raw;
    const auto f = simplex(n);
    for (std::size_t i = 0; i < n; ++i) raw.types.push_back({ts[i], f[i]});
    const auto g = simplex(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double v1 = slope_dist(rng);
        const double v0 = intercept_dist(rng);
        raw.states.push_back({state_label(j), g[j], v1, v0});
    }
    return validate_instance(std::move(raw));
}

Instance generate_family(std::string_view name, const FamilyParams& params) {
    const auto get = [&](std::string_view key, double fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    const auto count = [&](std::string_view key, double fallback) {
        const double v = get(key, fallback);
        if (!(v >= 1.0) || v != std::floor(v)) {
            throw Error(ErrorCode::BadParams, std::string(key) + " must be a positive integer");
        }
        return static_cast<std::size_t>(v);
    };
    for (const auto& [key, v] : params) {
        if (!std::isfinite(v)) throw Error(ErrorCode::BadParams, "non-finite parameter " + key);
    }

    if (name == "uniform_product") {
        UniformProductParams p;
        p.t_lo = get("t_lo", p.t_lo);
        p.t_hi = get("t_hi", p.t_hi);
        p.q_lo = get("q_lo", p.q_lo);
        p.q_hi = get("q_hi", p.q_hi);
        p.v0 = get("v0", p.v0);
        p.num_types = count("N", 200);
        p.num_states = count("M", static_cast<double>(p.num_types));
        return uniform_product(p);
    }
    if (name == "equal_revenue_example") {
        const std::size_t n = count("N", 400);
        return equal_revenue_example(get("C", 100.0), n, count("M", static_cast<double>(n)));
    }
    if (name == "table") return table_instance();
    if (name == "low_tail" || name == "high_tail" || name == "mixed") {
        const std::size_t n = count("N", 200);
        const std::size_t m = count("M", static_cast<double>(n));
        if (name == "low_tail") return low_tail_example(n, m);
        if (name == "high_tail") return high_tail_example(n, m);
        return mixed_example(n, m);
    }
    if (name == "random") {
        const double seed = get("seed", 0.0);
        if (seed < 0.0) throw Error(ErrorCode::BadParams, "seed must be non-negative");
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
        return random_instance(rng);
    }
    throw Error(ErrorCode::UnknownFamily, std::string(name));
}

} // namespace infosell
