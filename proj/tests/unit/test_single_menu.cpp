#include "infosell/optimal_mechanism.hpp"
#include "infosell/single_menu.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace infosell {
namespace {

TEST(SingleMenu, TableFullInformationValues) {
    const Instance inst = table_instance();
    EXPECT_NEAR(full_info_value(inst, 0), 1.0, 1e-12);
    EXPECT_NEAR(full_info_value(inst, 1), 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(full_info_value(inst, 2), 1.0 / 3.0, 1e-12);
}

TEST(SingleMenu, TableReserve) {
    // Candidates 1 * 1/3, 2/3 * 2/3, 1/3 * 1: the middle one wins.
    const ReservePrice rp = myerson_reserve(table_instance());
    EXPECT_NEAR(rp.reserve, 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(rp.rev_single, 4.0 / 9.0, 1e-12);
}

TEST(SingleMenu, NonNegativeValuesCarryNoInformationValue) {
    RawInstance raw;
    raw.types = {{1.0, 0.5}, {2.0, 0.5}};
    raw.states = {{"a", 0.5, 1.0, 0.0}, {"b", 0.5, 2.0, 1.0}};
    const Instance inst = validate_instance(raw);
    EXPECT_EQ(full_info_value(inst, 0), 0.0);
    EXPECT_EQ(full_info_value(inst, 1), 0.0);
    EXPECT_EQ(myerson_reserve(inst).rev_single, 0.0);
}

TEST(SingleMenu, ConstantInformationValue) {
    // v1 = 0, so e(t) does not depend on t.
    RawInstance raw;
    raw.types = {{1.0, 0.2}, {2.0, 0.3}, {3.0, 0.5}};
    raw.states = {{"a", 0.5, 0.0, -2.0}, {"b", 0.5, 0.0, 1.0}};
    const ReservePrice rp = myerson_reserve(validate_instance(raw));
    EXPECT_NEAR(rp.reserve, 0.5, 1e-12);
    EXPECT_NEAR(rp.rev_single, 0.5, 1e-12);
}

TEST(SingleMenu, EqualRevenueFamily) {
    const Instance inst = equal_revenue_example(100.0, 400);
    for (std::size_t i = 0; i < inst.num_types(); i += 57) {
        const double t = inst.types.t(i);
        EXPECT_NEAR(full_info_value(inst, i), t * t / 200.0, 1e-2);
    }
    EXPECT_NEAR(myerson_reserve(inst).rev_single, 1.0, 1e-3);
}

TEST(SingleMenu, RatioShrinksAsTheSpreadGrows) {
    double previous = 2.0;
    for (double C : {20.0, 80.0, 320.0}) {
        const SingleMenuReport rep = ratio_report(equal_revenue_example(C, 150));
        EXPECT_LT(rep.ratio, previous) << "C = " << C;
        previous = rep.ratio;
    }
}

TEST(SingleMenu, SingleTypeRatioIsOne) {
    RawInstance raw;
    raw.types = {{2.0, 1.0}};
    raw.states = {{"a", 0.5, 1.0, -5.0}, {"b", 0.5, 1.0, 1.0}};
    const SingleMenuReport rep = ratio_report(validate_instance(raw));
    EXPECT_NEAR(rep.ratio, 1.0, 1e-12);
    EXPECT_TRUE(rep.mhr_flag);
}

TEST(SingleMenu, HazardCheck) {
    EXPECT_TRUE(has_monotone_hazard({1, 2, 3}, {0.5, 0.3, 0.2}));
    EXPECT_TRUE(has_monotone_hazard({3, 1, 2}, {0.1, 0.1, 0.8}));
    EXPECT_FALSE(has_monotone_hazard({1, 2, 3}, {0.5, 0.1, 0.4}));
    // Equal values merge before the hazard is taken: [0.5, 0.5].
    EXPECT_TRUE(has_monotone_hazard({1, 1, 2}, {0.25, 0.25, 0.5}));
    EXPECT_TRUE(has_monotone_hazard({1, 2, 2}, {0.5, 0.05, 0.45}));
}

TEST(SingleMenuProperty, ReportBounds) {
    std::mt19937_64 rng(51);
    int flagged = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const Instance inst = testing::random_small_instance(rng);
        const SingleMenuReport rep = ratio_report(inst);
        EXPECT_GE(rep.rev_single, 0.0);
        EXPECT_LE(rep.rev_single, rep.rev_optimal + 1e-9);
        EXPECT_LE(rep.rev_optimal, rep.welfare + rep.prior_term + 1e-9);
        for (double e : rep.e_values) EXPECT_GE(e, 0.0);
        if (rep.mhr_flag) {
            ++flagged;
            EXPECT_GE(rep.rev_single, rep.rev_optimal / std::exp(1.0) - 1e-6);
        }
    }
    EXPECT_GT(flagged, 0);
}

} // namespace
} // namespace infosell
