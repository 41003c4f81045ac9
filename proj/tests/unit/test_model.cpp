#include "infosell/error.hpp"
#include "infosell/model.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

namespace infosell {
namespace {

RawInstance table_raw() {
    RawInstance raw;
    for (double t : {3.0, 4.0, 5.0}) raw.types.push_back({t, 1.0 / 3.0});
    for (double q : {1.0, 2.0, 3.0}) raw.states.push_back({"q", 1.0 / 3.0, q, -6.0});
    return raw;
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an infosell::Error";
    return ErrorCode::IoError;
}

TEST(Model, TableInstanceValidates) {
    const Instance inst = validate_instance(table_raw());
    EXPECT_EQ(inst.num_types(), 3u);
    EXPECT_EQ(inst.num_states(), 3u);
    EXPECT_DOUBLE_EQ(inst.types.cdf(2), 1.0);
}

TEST(Model, SingleTypeSingleState) {
    RawInstance raw;
    raw.types = {{1.0, 1.0}};
    raw.states = {{"only", 1.0, 0.5, -1.0}};
    const Instance inst = validate_instance(raw);
    EXPECT_EQ(inst.num_types(), 1u);
    EXPECT_DOUBLE_EQ(inst.types.gap_after(0), 0.0);
    EXPECT_DOUBLE_EQ(inst.types.gap_before(0), 0.0);
}

TEST(Model, RejectsRepeatedType) {
    RawInstance raw = table_raw();
    raw.types[1].t = 3.0;
    EXPECT_EQ(code_of([&] { validate_instance(raw); }), ErrorCode::NonIncreasingTypes);
}

TEST(Model, RejectsZeroMass) {
    RawInstance raw = table_raw();
    raw.types[0].f = 0.0;
    raw.types[1].f = 2.0 / 3.0;
    EXPECT_EQ(code_of([&] { validate_instance(raw); }), ErrorCode::NonPositiveMass);
}

TEST(Model, RejectsMassFarFromOne) {
    RawInstance raw = table_raw();
    raw.states[0].g = 0.5;
    EXPECT_EQ(code_of([&] { validate_instance(raw); }), ErrorCode::MassNotOne);
}

TEST(Model, RenormalizesTinyMassError) {
    RawInstance raw = table_raw();
    raw.types[0].f += 5e-10;
    const Instance inst = validate_instance(raw);
    double total = 0.0;
    for (const auto& p : inst.types.points()) total += p.f;
    EXPECT_NEAR(total, 1.0, kMassTolerance);
}

TEST(Model, RejectsNegativeSlope) {
    RawInstance raw = table_raw();
    raw.states[2].v1 = -0.1;
    EXPECT_EQ(code_of([&] { validate_instance(raw); }), ErrorCode::NegativeAlpha);
}

TEST(Model, RejectsEmpty) {
    RawInstance raw = table_raw();
    raw.states.clear();
    EXPECT_EQ(code_of([&] { validate_instance(raw); }), ErrorCode::EmptyInput);
}

TEST(Model, TableValues) {
    const Instance inst = table_instance();
    EXPECT_DOUBLE_EQ(value(inst, 0, 0), -3.0);
    EXPECT_DOUBLE_EQ(value(inst, 1, 1), 2.0);
    EXPECT_NEAR(prior_value(inst, 0), 0.0, 1e-12);
    EXPECT_NEAR(prior_value(inst, 2), 4.0, 1e-12);
}

TEST(Model, ZeroCoefficientsGiveZeroValue) {
    RawInstance raw;
    raw.types = {{1.0, 0.5}, {2.0, 0.5}};
    raw.states = {{"z", 1.0, 0.0, 0.0}};
    const Instance inst = validate_instance(raw);
    EXPECT_EQ(value(inst, 0, 1), 0.0);
}

TEST(Model, IndexOutOfRange) {
    const Instance inst = table_instance();
    EXPECT_EQ(code_of([&] { value(inst, 3, 0); }), ErrorCode::IndexOutOfRange);
    EXPECT_EQ(code_of([&] { prior_value(inst, 7); }), ErrorCode::IndexOutOfRange);
}

TEST(Model, HighTailFamilyEndpoints) {
    const Instance inst = high_tail_example(50, 40);
    EXPECT_NEAR(prior_value(inst, 0), 1.5, 1e-12);
    EXPECT_NEAR(prior_value(inst, inst.num_types() - 1), 9.0, 1e-12);
}

TEST(Model, UniformProductFamily) {
    const Instance inst = generate_family(
        "uniform_product", {{"t_lo", 2}, {"t_hi", 3}, {"q_lo", 0}, {"q_hi", 1}, {"v0", -2}, {"N", 200}, {"M", 200}});
    EXPECT_EQ(inst.num_types(), 200u);
    EXPECT_EQ(inst.num_states(), 200u);
    EXPECT_DOUBLE_EQ(inst.types.front(), 2.0);
    EXPECT_DOUBLE_EQ(inst.types.back(), 3.0);
    EXPECT_NEAR(inst.types.f(17), 1.0 / 200.0, 1e-15);
    EXPECT_DOUBLE_EQ(value(inst, 199, 199), 1.0);
}

TEST(Model, EqualRevenueFamilyHasAtom) {
    const Instance inst = equal_revenue_example(100.0, 400);
    EXPECT_EQ(inst.num_types(), 400u);
    EXPECT_DOUBLE_EQ(inst.types.back(), 50.0);
    EXPECT_NEAR(inst.types.f(399), 8.0 / 100.0, 1e-12);
    EXPECT_NEAR(inst.types.front(), std::sqrt(200.0), 1e-12);
    // Survival at every grid point follows the continuous law 2C / t^2.
    for (std::size_t i = 0; i < inst.num_types(); i += 37) {
        const double t = inst.types.t(i);
        EXPECT_NEAR(1.0 - inst.types.cdf_before(i), 200.0 / (t * t), 1e-12);
    }
}

TEST(Model, FamilyErrors) {
    EXPECT_EQ(code_of([] { generate_family("nope", {}); }), ErrorCode::UnknownFamily);
    EXPECT_EQ(code_of([] { generate_family("mixed", {{"N", 2.5}}); }), ErrorCode::BadParams);
    EXPECT_EQ(code_of([] { generate_family("equal_revenue_example", {{"C", 1.0}}); }), ErrorCode::BadParams);
}

TEST(Model, RandomFamilyIsDeterministic) {
    const Instance a = generate_family("random", {{"seed", 42}});
    const Instance b = generate_family("random", {{"seed", 42}});
    ASSERT_EQ(a.num_types(), b.num_types());
    ASSERT_EQ(a.num_states(), b.num_states());
    for (std::size_t i = 0; i < a.num_types(); ++i) EXPECT_EQ(a.types.t(i), b.types.t(i));
    for (std::size_t q = 0; q < a.num_states(); ++q) EXPECT_EQ(a.states[q].v0, b.states[q].v0);
}

TEST(ModelProperty, GeneratedFamiliesAreWellFormed) {
    std::mt19937_64 rng(11);
    std::vector<Instance> family;
    family.push_back(table_instance());
    family.push_back(low_tail_example(37, 23));
    family.push_back(high_tail_example(41, 19));
    family.push_back(mixed_example(29, 31));
    family.push_back(equal_revenue_example(100.0, 97, 53));
    for (int k = 0; k < 50; ++k) family.push_back(random_instance(rng));
    for (const auto& inst : family) {
        double tf = 0.0;
        for (std::size_t i = 0; i < inst.num_types(); ++i) {
            tf += inst.types.f(i);
            if (i > 0) EXPECT_GT(inst.types.t(i), inst.types.t(i - 1));
        }
        double tg = 0.0;
        for (const auto& s : inst.states.states()) tg += s.g;
        EXPECT_NEAR(tf, 1.0, kMassTolerance);
        EXPECT_NEAR(tg, 1.0, kMassTolerance);
    }
}

TEST(ModelProperty, PriorValueIsAffineAndValuesRise) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const Instance inst = testing::random_small_instance(rng);
        const double slope = inst.states.mean_slope();
        const double intercept = inst.states.mean_intercept();
        for (std::size_t i = 0; i < inst.num_types(); ++i) {
            const double t = inst.types.t(i);
            EXPECT_NEAR(prior_value(inst, i), slope * t + intercept, 1e-12 * (1.0 + std::abs(slope * t)));
            for (std::size_t q = 0; i > 0 && q < inst.num_states(); ++q) {
                EXPECT_GE(value(inst, q, i), value(inst, q, i - 1));
            }
        }
    }
}

} // namespace
} // namespace infosell
