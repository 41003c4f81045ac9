#include "infosell/error.hpp"
#include "infosell/io.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

namespace infosell {
namespace {

using nlohmann::json;

constexpr const char* kTable = R"({
  "types": [{"t": 3, "f": 0.333333333333}, {"t": 4, "f": 0.333333333333}, {"t": 5, "f": 0.333333333334}],
  "states": [
    {"label": "q1", "g": 0.333333333333, "v1": 1, "v0": -6},
    {"label": "q2", "g": 0.333333333333, "v1": 2, "v0": -6},
    {"v0": -6, "v1": 3, "g": 0.333333333334, "label": "q3"}
  ]
})";

ErrorCode parse_code(const std::string& text) {
    try {
        parse_instance(text);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected a parse failure";
    return ErrorCode::IoError;
}

TEST(Io, ParsesInstance) {
    const Instance inst = parse_instance(kTable);
    EXPECT_EQ(inst.num_types(), 3u);
    EXPECT_EQ(inst.states[2].label, "q3");
    EXPECT_NEAR(value(inst, 0, 0), -3.0, 1e-12);
}

TEST(Io, RoundTrip) {
    const Instance inst = table_instance();
    const std::string text = instance_to_json(inst);
    const Instance back = parse_instance(text);
    EXPECT_EQ(instance_to_json(back), text);
}

TEST(Io, RejectsBadDocuments) {
    EXPECT_EQ(parse_code("{"), ErrorCode::ParseError);
    EXPECT_EQ(parse_code("[]"), ErrorCode::ParseError);
    EXPECT_EQ(parse_code(R"({"types": [], "states": [], "extra": 1})"), ErrorCode::ParseError);
    EXPECT_EQ(parse_code(R"({"types": [{"t": 1, "f": 1, "w": 2}], "states": [{"g": 1, "v1": 1, "v0": 0}]})"),
              ErrorCode::ParseError);
    EXPECT_EQ(parse_code(R"({"types": [{"t": 1}], "states": [{"g": 1, "v1": 1, "v0": 0}]})"),
              ErrorCode::ParseError);
    EXPECT_EQ(parse_code(R"({"types": [{"t": "1", "f": 1}], "states": [{"g": 1, "v1": 1, "v0": 0}]})"),
              ErrorCode::ParseError);
    EXPECT_EQ(parse_code(R"({"types": [{"t": 1, "f": 0.5}], "states": [{"g": 1, "v1": 1, "v0": 0}]})"),
              ErrorCode::MassNotOne);
    EXPECT_EQ(parse_code(R"({"types": [], "states": [{"g": 1, "v1": 1, "v0": 0}]})"), ErrorCode::EmptyInput);
}

TEST(Io, DefaultLabels) {
    const Instance inst = parse_instance(R"({"types": [{"t": 1, "f": 1}], "states": [{"g": 1, "v1": 1, "v0": 0}]})");
    EXPECT_EQ(inst.states[0].label, "q1");
}

TEST(Io, RoundsToTwelveDigits) {
    EXPECT_EQ(round_sig(2.0 / 3.0), 0.666666666667);
    EXPECT_EQ(round_sig(0.0), 0.0);
    EXPECT_EQ(round_sig(-1234567.891234567), -1234567.89123);
    EXPECT_EQ(json(round_sig(1.0 / 3.0)).dump(), "0.333333333333");
}

TEST(Io, SolutionDocument) {
    const Instance inst = table_instance();
    const Solution sol = solve(inst);
    const json doc = json::parse(solution_to_json(sol));
    EXPECT_EQ(doc["case"], "HighTail");
    EXPECT_EQ(doc["pay"][0].get<double>(), 0.666666666667);
    EXPECT_EQ(doc["pi"][0], json::array({0.0, 0.0, 1.0}));
    for (const char* key : {"theta", "c", "D", "revenue", "P", "u", "s", "V_L", "V_H"}) {
        EXPECT_TRUE(doc.contains(key)) << key;
    }
    const Mechanism back = parse_mechanism(doc.dump());
    EXPECT_EQ(back.pi, sol.mechanism.pi);
    EXPECT_NEAR(back.pay[1], 2.0 / 3.0, 1e-12);
}

TEST(Io, MechanismParseErrors) {
    EXPECT_THROW(parse_mechanism(R"({"pi": [[0, 1]]})"), Error);
    EXPECT_THROW(parse_mechanism(R"({"pi": [["x"]], "pay": [0]})"), Error);
}

TEST(Io, CsvLayouts) {
    const Instance inst = table_instance();
    const Solution sol = solve(inst);
    const std::string csv = solution_to_csv(inst, sol);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,theta,pay,P,u,s");
    EXPECT_NE(csv.find("\n3,-3,0.666666666667,1.66666666667,0.333333333333,0.333333333333\n"), std::string::npos);
    const std::string curve = curve_to_csv(inst.types, ironed_lower(inst.types));
    EXPECT_EQ(curve, "t,F,raw,ironed\n3,0.333333333333,1,1\n4,0.666666666667,3,3\n5,1,5,5\n");
}

TEST(Io, ReportsAreJson) {
    const Instance inst = table_instance();
    const json feas = json::parse(feasibility_to_json(check_feasible(inst, solve(inst).mechanism)));
    EXPECT_TRUE(feas["feasible"].get<bool>());
    EXPECT_TRUE(feas["failures"].empty());
    const json menu = json::parse(single_menu_to_json(ratio_report(inst)));
    EXPECT_EQ(menu["rev_single"].get<double>(), 0.444444444444);
}

TEST(Io, MissingFile) {
    try {
        read_text_file("/nonexistent/path/instance.json");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IoError);
    }
}

} // namespace
} // namespace infosell
