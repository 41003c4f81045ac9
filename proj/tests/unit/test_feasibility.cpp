#include "infosell/error.hpp"
#include "infosell/feasibility.hpp"
#include "infosell/lp_oracle.hpp"
#include "infosell/optimal_mechanism.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

namespace infosell {
namespace {

bool fails(const FeasibilityReport& rep, const std::string& name) {
    const auto f = rep.failures();
    return std::find(f.begin(), f.end(), name) != f.end();
}

TEST(Feasibility, TableSolutionPasses) {
    const Instance inst = table_instance();
    const FeasibilityReport rep = check_feasible(inst, solve(inst).mechanism);
    EXPECT_TRUE(rep.feasible());
    EXPECT_TRUE(rep.p_monotone_signal());
    EXPECT_NEAR(rep.ir_low, 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(rep.ir_high, 0.0, 1e-12);
}

TEST(Feasibility, TableQuantities) {
    const Instance inst = table_instance();
    const Mechanism mech = solve(inst).mechanism;
    EXPECT_NEAR(weighted_prob(inst, mech, 1), 5.0 / 3.0, 1e-12);
    // Gross value (2 + 6) / 3 less the price 2/3.
    EXPECT_NEAR(utility(inst, mech, 1), 2.0, 1e-12);
    // v(t_2) = 2 as well, so the middle type keeps no surplus.
    EXPECT_NEAR(surplus(inst, mech, 1), 0.0, 1e-12);
    EXPECT_NEAR(surplus(inst, mech, 0), 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(revenue(inst, mech), 4.0 / 9.0, 1e-12);
}

TEST(Feasibility, OverchargingTheTopTypeBreaksParticipation) {
    const Instance inst = table_instance();
    Mechanism mech = solve(inst).mechanism;
    mech.pay[2] += 0.5;
    const FeasibilityReport rep = check_feasible(inst, mech);
    EXPECT_FALSE(rep.feasible());
    EXPECT_TRUE(fails(rep, "ir_high"));
    EXPECT_TRUE(fails(rep, "incentive_compatibility"));
    EXPECT_EQ(rep.ic_worst.truth, 2u);
}

TEST(Feasibility, NegativePriceIsFlagged) {
    const Instance inst = table_instance();
    Mechanism mech = solve(inst).mechanism;
    mech.pay[2] = -0.25;
    EXPECT_TRUE(fails(check_feasible(inst, mech), "non_negative_payment"));
}

TEST(Feasibility, NonMonotoneSignalIsFlagged) {
    const Instance inst = table_instance();
    Mechanism mech = solve(inst).mechanism;
    mech.pi[0][2] = 0.0;
    mech.pi[1][2] = 0.0;
    const FeasibilityReport rep = check_feasible(inst, mech);
    EXPECT_FALSE(rep.p_monotone_signal());
    EXPECT_TRUE(fails(rep, "signal_monotonicity"));
}

TEST(Feasibility, DisobedientRecommendationIsFlagged) {
    // Recommending the active action in the state where it loses 3.
    const Instance inst = table_instance();
    Mechanism mech = empty_mechanism(inst);
    mech.pi[0][0] = 1.0;
    EXPECT_TRUE(fails(check_feasible(inst, mech), "obedience"));
}

TEST(Feasibility, ShapeErrors) {
    const Instance inst = table_instance();
    Mechanism mech = empty_mechanism(inst);
    mech.pi[1][1] = 1.5;
    EXPECT_THROW(check_feasible(inst, mech), Error);
    mech = empty_mechanism(inst);
    mech.pay.pop_back();
    EXPECT_THROW(check_feasible(inst, mech), Error);
    EXPECT_THROW(weighted_prob(inst, empty_mechanism(inst), 5), Error);
}

TEST(Feasibility, SingleTypeHasNoIncentiveConstraints) {
    RawInstance raw;
    raw.types = {{1.0, 1.0}};
    raw.states = {{"a", 1.0, 1.0, 0.0}};
    const Instance inst = validate_instance(raw);
    const FeasibilityReport rep = check_feasible(inst, solve(inst).mechanism);
    EXPECT_EQ(rep.ic_worst.gain, 0.0);
    EXPECT_TRUE(rep.feasible());
}

// Builds a menu with non-decreasing P(t) and utility steps inside
// [gap P(t_{i-1}), gap P(t_i)], anchored so both end participation
// constraints hold. Payments may come out negative.
Mechanism bracketed_menu(const Instance& inst, std::mt19937_64& rng) {
    const std::size_t n = inst.num_types();
    const std::size_t m = inst.num_states();
    std::vector<std::vector<double>> cols(n, std::vector<double>(m));
    for (auto& col : cols) {
        for (double& x : col) x = testing::uniform(rng, 0.0, 1.0) < 0.3 ? testing::uniform(rng, 0.0, 1.0) : std::round(testing::uniform(rng, 0.0, 1.0));
    }
    const auto P_of = [&](const std::vector<double>& col) {
        double acc = 0.0;
        for (std::size_t q = 0; q < m; ++q) acc += col[q] * inst.states[q].g * inst.states[q].v1;
        return acc;
    };
    std::sort(cols.begin(), cols.end(), [&](const auto& a, const auto& b) { return P_of(a) < P_of(b); });

    Mechanism mech = empty_mechanism(inst);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t q = 0; q < m; ++q) mech.pi[q][i] = cols[i][q];
    }
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        const double w = testing::uniform(rng, 0.0, 1.0);
        const double lo = P_of(cols[i - 1]);
        const double hi = P_of(cols[i]);
        u[i] = u[i - 1] + inst.types.gap_before(i) * (lo + w * (hi - lo));
    }
    const double top = prior_value(inst, n - 1);
    const double shift = std::max(0.0, top - u[n - 1]) + testing::uniform(rng, 0.0, 0.5);
    for (std::size_t i = 0; i < n; ++i) {
        double gross = 0.0;
        for (std::size_t q = 0; q < m; ++q) gross += inst.states[q].g * mech.pi[q][i] * value(inst, q, i);
        mech.pay[i] = gross - (u[i] + shift);
    }
    return mech;
}

TEST(FeasibilityProperty, BracketedMenusAreIncentiveCompatible) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 400; ++trial) {
        const Instance inst = testing::random_small_instance(rng);
        const Mechanism mech = bracketed_menu(inst, rng);
        const FeasibilityReport rep = check_feasible(inst, mech);
        EXPECT_TRUE(rep.p_monotone_signal());
        EXPECT_LE(rep.utility_identity_gap, 1e-9);
        EXPECT_LE(rep.ic_worst.gain, 1e-9) << "trial " << trial;
        // Participation at both ends implies it everywhere, and the surplus
        // rises then falls.
        EXPECT_GE(rep.ir_worst, -1e-9);
        EXPECT_TRUE(rep.surplus_shape_ok);
    }
}

TEST(FeasibilityProperty, IncentiveCompatibleMenusHaveMonotoneSignals) {
    // Conversely, LP optima satisfy pairwise IC, so the reduced form must hold.
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 150; ++trial) {
        const Instance inst = testing::random_small_instance(rng, 5, 5);
        const Mechanism mech = solve_oracle(inst).mechanism;
        const FeasibilityReport rep = check_feasible(inst, mech, 1e-7);
        EXPECT_TRUE(rep.p_monotone_signal()) << "trial " << trial;
        EXPECT_LE(rep.utility_identity_gap, 1e-7);
        EXPECT_TRUE(rep.surplus_shape_ok);
    }
}

} // namespace
} // namespace infosell
