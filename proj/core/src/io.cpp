#include "infosell/io.hpp"

#include "infosell/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace infosell {

namespace {

using nlohmann::json;

json num(double x) { return round_sig(x); }

json num_array(const std::vector<double>& xs) {
    json out = json::array();
    for (double x : xs) out.push_back(num(x));
    return out;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*g", kFloatDigits, x);
    return buf;
}

json parse_document(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, std::string_view where) {
    if (!obj.is_object()) throw Error(ErrorCode::ParseError, std::string(where) + " must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) {
            throw Error(ErrorCode::ParseError, "unknown field '" + key + "' in " + std::string(where));
        }
    }
}

double get_number(const json& obj, const char* key, std::string_view where) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) {
        throw Error(ErrorCode::ParseError, std::string(where) + " needs numeric field '" + key + "'");
    }
    return it->get<double>();
}

const json& get_array(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_array()) {
        throw Error(ErrorCode::ParseError, std::string("missing array '") + key + "'");
    }
    return *it;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json ic_json(const IcViolation& v) {
    return {{"truth", v.truth}, {"report", v.report}, {"gain", num(v.gain)}};
}

} // namespace

double round_sig(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    return std::strtod(fmt(x).c_str(), nullptr);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

Instance parse_instance(std::string_view text) {
    const json doc = parse_document(text);
    reject_unknown(doc, {"types", "states"}, "instance");

    RawInstance raw;
    for (const auto& item : get_array(doc, "types")) {
        reject_unknown(item, {"t", "f"}, "type entry");
        raw.types.push_back({get_number(item, "t", "type entry"), get_number(item, "f", "type entry")});
    }
    std::size_t index = 0;
    for (const auto& item : get_array(doc, "states")) {
        reject_unknown(item, {"label", "g", "v1", "v0"}, "state entry");
        State s;
        if (auto it = item.find("label"); it != item.end()) {
            if (it->is_string()) s.label = it->get<std::string>();
            else if (it->is_number()) s.label = it->dump();
            else throw Error(ErrorCode::ParseError, "state label must be a string or number");
        } else {
            s.label = "q" + std::to_string(index + 1);
        }
        s.g = get_number(item, "g", "state entry");
        s.v1 = get_number(item, "v1", "state entry");
        s.v0 = get_number(item, "v0", "state entry");
        raw.states.push_back(std::move(s));
        ++index;
    }
    return validate_instance(std::move(raw));
}

std::string instance_to_json(const Instance& inst) {
    json types = json::array();
    for (const auto& p : inst.types.points()) types.push_back({{"t", num(p.t)}, {"f", num(p.f)}});
    json states = json::array();
    for (const auto& s : inst.states.states()) {
        states.push_back({{"label", s.label}, {"g", num(s.g)}, {"v1", num(s.v1)}, {"v0", num(s.v0)}});
    }
    return dump({{"types", types}, {"states", states}});
}

Mechanism parse_mechanism(std::string_view text) {
    const json doc = parse_document(text);
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "mechanism must be an object");
    Mechanism mech;
    try {
        for (const auto& row : get_array(doc, "pi")) mech.pi.push_back(row.get<std::vector<double>>());
        mech.pay = get_array(doc, "pay").get<std::vector<double>>();
    } catch (const json::type_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    return mech;
}

std::string solution_to_json(const Solution& sol) {
    json pi = json::array();
    for (const auto& row : sol.mechanism.pi) pi.push_back(num_array(row));
    const auto& d = sol.diagnostics;
    json doc = {
        {"case", std::string(to_string(sol.label.tag))},
        {"c", num(d.c)},
        {"D", num(d.boundary_fraction)},
        {"split_weight", num(d.split_weight)},
        {"V_L", num(d.v_low)},
        {"V_H", num(d.v_high)},
        {"revenue", num(d.revenue)},
        {"theta", num_array(sol.policy.theta)},
        {"pi", pi},
        {"pay", num_array(sol.mechanism.pay)},
        {"P", num_array(d.weighted_prob)},
        {"u", num_array(d.utility)},
        {"s", num_array(d.surplus)},
    };
    return dump(doc);
}

std::string solution_to_csv(const Instance& inst, const Solution& sol) {
    std::ostringstream os;
    os << "t,theta,pay,P,u,s\n";
    const auto& d = sol.diagnostics;
    for (std::size_t i = 0; i < inst.num_types(); ++i) {
        os << fmt(inst.types.t(i)) << ',' << fmt(sol.policy.theta[i]) << ',' << fmt(sol.mechanism.pay[i]) << ','
           << fmt(d.weighted_prob[i]) << ',' << fmt(d.utility[i]) << ',' << fmt(d.surplus[i]) << '\n';
    }
    return os.str();
}

std::string curve_to_csv(const TypeGrid& grid, const VirtualCurve& curve) {
    std::ostringstream os;
    os << "t,F,raw,ironed\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        os << fmt(grid.t(i)) << ',' << fmt(grid.cdf(i)) << ',' << fmt(curve.raw[i]) << ','
           << fmt(curve.ironed[i]) << '\n';
    }
    return os.str();
}

std::string feasibility_to_json(const FeasibilityReport& r) {
    json failures = json::array();
    for (const auto& name : r.failures()) failures.push_back(name);
    json doc = {
        {"feasible", r.feasible()},
        {"failures", failures},
        {"tolerance", num(r.tolerance)},
        {"signal_monotonicity_violation", num(r.p_monotone_violation)},
        {"utility_identity_gap", num(r.utility_identity_gap)},
        {"ir_low", num(r.ir_low)},
        {"ir_high", num(r.ir_high)},
        {"ir_worst", num(r.ir_worst)},
        {"min_payment", num(r.min_payment)},
        {"obedience_worst", num(r.obedience_worst)},
        {"ic_worst", ic_json(r.ic_worst)},
        {"ic_best_response_worst", ic_json(r.ic_best_response_worst)},
        {"surplus_shape_violation", num(r.surplus_shape_violation)},
    };
    return dump(doc);
}

std::string oracle_to_json(const OracleReport& r) {
    json failures = json::array();
    for (const auto& name : r.oracle_feasibility.failures()) failures.push_back(name);
    json doc = {
        {"closed_revenue", num(r.closed_revenue)},
        {"oracle_revenue", num(r.oracle_revenue)},
        {"gap", num(r.gap)},
        {"abs_gap", num(std::abs(r.gap))},
        {"relative_gap", num(r.relative_gap)},
        {"dominance_ok", r.dominance_ok},
        {"oracle_feasible", r.oracle_feasibility.feasible()},
        {"oracle_failures", failures},
    };
    return dump(doc);
}

std::string single_menu_to_json(const SingleMenuReport& r) {
    json doc = {
        {"e_values", num_array(r.e_values)},
        {"reserve", num(r.reserve)},
        {"rev_single", num(r.rev_single)},
        {"rev_optimal", num(r.rev_optimal)},
        {"welfare", num(r.welfare)},
        {"prior_term", num(r.prior_term)},
        {"ratio", num(r.ratio)},
        {"mhr_flag", r.mhr_flag},
    };
    return dump(doc);
}

std::string single_menu_to_csv(const Instance& inst, const SingleMenuReport& r) {
    std::ostringstream os;
    os << "t,f,e\n";
    for (std::size_t i = 0; i < inst.num_types(); ++i) {
        os << fmt(inst.types.t(i)) << ',' << fmt(inst.types.f(i)) << ',' << fmt(r.e_values[i]) << '\n';
    }
    return os.str();
}

} // namespace infosell
