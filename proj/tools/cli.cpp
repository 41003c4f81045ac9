#include "cli.hpp"

#include "infosell/error.hpp"
#include "infosell/feasibility.hpp"
#include "infosell/io.hpp"
#include "infosell/lp_oracle.hpp"
#include "infosell/optimal_mechanism.hpp"
#include "infosell/single_menu.hpp"
#include "infosell/virtual_value.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

namespace infosell::cli {

namespace {

using nlohmann::json;

bool is_usage_error(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonIncreasingTypes:
    case ErrorCode::NonPositiveMass:
    case ErrorCode::MassNotOne:
    case ErrorCode::NegativeAlpha:
    case ErrorCode::EmptyInput:
    case ErrorCode::UnknownFamily:
    case ErrorCode::BadParams:
    case ErrorCode::BadMixWeight:
    case ErrorCode::TooLarge:
    case ErrorCode::ParseError:
    case ErrorCode::IoError:
        return true;
    default:
        return false;
    }
}

Instance load_instance(const RunConfig& cfg) {
    if (cfg.input.empty()) throw Error(ErrorCode::IoError, "--input is required");
    return parse_instance(read_text_file(cfg.input));
}

void require_json(const RunConfig& cfg, std::string_view command) {
    if (cfg.format != Format::Json) {
        throw Error(ErrorCode::BadParams, std::string(command) + " only writes JSON");
    }
}

int cmd_gen(const RunConfig& cfg) {
    require_json(cfg, "gen");
    FamilyParams params = cfg.params;
    if (cfg.grid) {
        params.try_emplace("N", static_cast<double>(*cfg.grid));
        params.try_emplace("M", static_cast<double>(*cfg.grid));
    }
    if (cfg.family == "random") params.try_emplace("seed", static_cast<double>(cfg.seed));
    write_text_file(cfg.output, instance_to_json(generate_family(cfg.family, params)));
    return kExitOk;
}

int cmd_solve(const RunConfig& cfg) {
    const Instance inst = load_instance(cfg);
    const Solution sol = solve(inst);
    write_text_file(cfg.output, cfg.format == Format::Json ? solution_to_json(sol) : solution_to_csv(inst, sol));
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& err) {
    require_json(cfg, "verify");
    const Instance inst = load_instance(cfg);
    const Mechanism mech =
        cfg.mechanism.empty() ? solve(inst).mechanism : parse_mechanism(read_text_file(cfg.mechanism));
    const FeasibilityReport rep = check_feasible(inst, mech, cfg.tolerance);
    write_text_file(cfg.output, feasibility_to_json(rep));
    const auto failures = rep.failures();
    for (const auto& name : failures) err << "check failed: " << name << "\n";
    return failures.empty() ? kExitOk : kExitCheckFailed;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& err) {
    require_json(cfg, "oracle");
    const Instance inst = load_instance(cfg);
    const Solution sol = solve(inst);
    const OracleReport rep = compare(inst, sol.mechanism, solve_oracle(inst));
    write_text_file(cfg.output, oracle_to_json(rep));
    bool ok = true;
    if (rep.relative_gap > cfg.gap_tolerance) {
        err << "check failed: relative gap " << rep.relative_gap << " exceeds " << cfg.gap_tolerance << "\n";
        ok = false;
    }
    if (!rep.dominance_ok) {
        err << "check failed: LP revenue below closed-form revenue\n";
        ok = false;
    }
    for (const auto& name : rep.oracle_feasibility.failures()) {
        err << "check failed: LP menu " << name << "\n";
        ok = false;
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_single_menu(const RunConfig& cfg) {
    const Instance inst = load_instance(cfg);
    const SingleMenuReport rep = ratio_report(inst);
    write_text_file(cfg.output,
                    cfg.format == Format::Json ? single_menu_to_json(rep) : single_menu_to_csv(inst, rep));
    return kExitOk;
}

int cmd_curve(const RunConfig& cfg) {
    const Instance inst = load_instance(cfg);
    VirtualCurve curve;
    if (cfg.curve_kind == "lower") curve = ironed_lower(inst.types);
    else if (cfg.curve_kind == "upper") curve = ironed_upper(inst.types);
    else if (cfg.curve_kind == "mixed") curve = ironed_mixed(inst.types, cfg.curve_c);
    else if (cfg.curve_kind == "pivot") curve = ironed_pivot(inst.types, cfg.curve_c);
    else throw Error(ErrorCode::BadParams, "unknown curve kind '" + cfg.curve_kind + "'");

    if (cfg.format == Format::Csv) {
        write_text_file(cfg.output, curve_to_csv(inst.types, curve));
    } else {
        json doc = {{"kind", cfg.curve_kind}, {"c", round_sig(curve.c)}};
        for (const char* key : {"raw", "ironed", "z", "H", "L"}) doc[key] = json::array();
        const auto put = [&](const char* key, const std::vector<double>& xs) {
            for (double x : xs) doc[key].push_back(round_sig(x));
        };
        put("raw", curve.raw);
        put("ironed", curve.ironed);
        put("z", curve.z);
        put("H", curve.H);
        put("L", curve.L);
        write_text_file(cfg.output, doc.dump(2) + "\n");
    }
    return kExitOk;
}

struct SweepRow {
    std::size_t types = 0;
    std::size_t states = 0;
    std::string tag;
    double closed = 0.0;
    double oracle = 0.0;
    double relative_gap = 0.0;
    bool dominance_ok = true;
    bool feasible = true;
    bool same_payment_ok = true;
    bool mhr_flag = false;
    bool mhr_bound_ok = true;
    std::string error;
};

SweepRow sweep_one(const Instance& inst, double tolerance) {
    SweepRow row;
    row.types = inst.num_types();
    row.states = inst.num_states();
    try {
        const Solution sol = solve(inst);
        row.tag = to_string(sol.label.tag);
        row.feasible = check_feasible(inst, sol.mechanism, tolerance).feasible();
        const auto& mech = sol.mechanism;
        for (std::size_t a = 0; a < row.types; ++a) {
            for (std::size_t b = a + 1; b < row.types; ++b) {
                bool same = true;
                for (std::size_t q = 0; q < row.states && same; ++q) same = mech.pi[q][a] == mech.pi[q][b];
                if (same && std::abs(mech.pay[a] - mech.pay[b]) > tolerance) row.same_payment_ok = false;
            }
        }
        const OracleReport rep = compare(inst, mech, solve_oracle(inst));
        row.closed = rep.closed_revenue;
        row.oracle = rep.oracle_revenue;
        row.relative_gap = rep.relative_gap;
        row.dominance_ok = rep.dominance_ok;
        const SingleMenuReport sm = ratio_report(inst);
        row.mhr_flag = sm.mhr_flag;
        row.mhr_bound_ok = !sm.mhr_flag || sm.rev_single >= sm.rev_optimal / std::exp(1.0) - 1e-6;
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& err) {
    std::mt19937_64 rng(cfg.seed);
    std::vector<Instance> corpus;
    corpus.reserve(cfg.count);
    for (std::size_t k = 0; k < cfg.count; ++k) corpus.push_back(random_instance(rng));

    std::vector<SweepRow> rows(cfg.count);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k = next++; k < corpus.size(); k = next++) rows[k] = sweep_one(corpus[k], cfg.tolerance);
    };
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, cfg.count)));
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::map<std::string, int> cases{{"LowTail", 0}, {"HighTail", 0}, {"Mixed", 0}};
    double max_gap = 0.0;
    int gap_failures = 0, dominance_failures = 0, feasibility_failures = 0, same_payment_failures = 0;
    int errors = 0, mhr_flagged = 0, mhr_failures = 0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const SweepRow& r = rows[k];
        if (!r.error.empty()) {
            ++errors;
            err << "instance " << k << ": " << r.error << "\n";
            continue;
        }
        ++cases[r.tag];
        max_gap = std::max(max_gap, r.relative_gap);
        gap_failures += r.relative_gap > cfg.gap_tolerance;
        dominance_failures += !r.dominance_ok;
        feasibility_failures += !r.feasible;
        same_payment_failures += !r.same_payment_ok;
        mhr_flagged += r.mhr_flag;
        mhr_failures += !r.mhr_bound_ok;
    }
    const int failures =
        errors + gap_failures + dominance_failures + feasibility_failures + same_payment_failures + mhr_failures;

    if (cfg.format == Format::Csv) {
        std::ostringstream os;
        os << "index,N,M,case,closed_revenue,oracle_revenue,relative_gap,feasible,mhr_flag,error\n";
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const SweepRow& r = rows[k];
            os << k << ',' << r.types << ',' << r.states << ',' << r.tag << ',' << round_sig(r.closed) << ','
               << round_sig(r.oracle) << ',' << round_sig(r.relative_gap) << ',' << (r.feasible ? 1 : 0) << ','
               << (r.mhr_flag ? 1 : 0) << ',' << (r.error.empty() ? "" : "error") << '\n';
        }
        write_text_file(cfg.output, os.str());
    } else {
        json doc = {
            {"count", cfg.count},
            {"seed", cfg.seed},
            {"cases", cases},
            {"max_relative_gap", round_sig(max_gap)},
            {"gap_failures", gap_failures},
            {"dominance_failures", dominance_failures},
            {"feasibility_failures", feasibility_failures},
            {"same_payment_failures", same_payment_failures},
            {"mhr_flagged", mhr_flagged},
            {"mhr_bound_failures", mhr_failures},
            {"errors", errors},
        };
        write_text_file(cfg.output, doc.dump(2) + "\n");
    }
    return failures == 0 ? kExitOk : kExitCheckFailed;
}

} // namespace

std::optional<int> parse_args(int argc, const char* const* argv, RunConfig& cfg) {
    CLI::App app{"Revenue-optimal mechanisms for selling information"};
    app.require_subcommand(1);

    std::string format = "json";
    std::vector<std::string> params;
    std::optional<double> tol;
    std::optional<double> gap_tol;

    const auto common = [&](CLI::App* sub, bool needs_input) {
        auto* in = sub->add_option("-i,--input", cfg.input, "Instance JSON file");
        if (needs_input) in->required();
        sub->add_option("-o,--output", cfg.output, "Output file (default stdout)");
        sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--tol", tol, "Feasibility tolerance");
        sub->add_option("--gap-tol", gap_tol, "Accepted relative revenue gap against the LP");
    };

    auto* gen = app.add_subcommand("gen", "Generate an instance");
    common(gen, false);
    gen->add_option("--family", cfg.family, "uniform_product, equal_revenue_example, table, low_tail, "
                                            "high_tail, mixed or random");
    gen->add_option("--param", params, "Family parameter as key=value (repeatable)");
    gen->add_option("--grid", cfg.grid, "Grid resolution for N and M");
    gen->add_option("--seed", cfg.seed, "Seed for the random family");

    auto* solve_cmd = app.add_subcommand("solve", "Compute the optimal mechanism");
    common(solve_cmd, true);

    auto* verify = app.add_subcommand("verify", "Check a mechanism against every constraint");
    common(verify, true);
    verify->add_option("-m,--mechanism", cfg.mechanism, "Mechanism JSON (default: solve the instance)");

    auto* oracle = app.add_subcommand("oracle", "Compare the closed form against the LP optimum");
    common(oracle, true);

    auto* single = app.add_subcommand("single-menu", "Full-revelation posted price benchmark");
    common(single, true);

    auto* sweep = app.add_subcommand("sweep", "Run solve, verify and oracle over a random corpus");
    common(sweep, false);
    sweep->add_option("--seed", cfg.seed, "Corpus seed");
    sweep->add_option("--count", cfg.count, "Number of instances");
    sweep->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");

    auto* curve = app.add_subcommand("curve", "Export a virtual value curve and its ironed version");
    common(curve, true);
    curve->add_option("--kind", cfg.curve_kind, "lower, upper, mixed or pivot")
        ->check(CLI::IsMember({"lower", "upper", "mixed", "pivot"}));
    curve->add_option("--c", cfg.curve_c, "Weight for mixed and pivot curves");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const std::map<CLI::App*, Command> commands{
        {gen, Command::Gen},       {solve_cmd, Command::Solve},       {verify, Command::Verify},
        {oracle, Command::Oracle}, {single, Command::SingleMenu},     {sweep, Command::Sweep},
        {curve, Command::Curve},
    };
    cfg.command = commands.at(app.get_subcommands().front());
    cfg.format = format == "csv" ? Format::Csv : Format::Json;

    for (const auto& kv : params) {
        const auto eq = kv.find('=');
        double value = 0.0;
        std::size_t used = 0;
        try {
            if (eq == std::string::npos) throw std::invalid_argument(kv);
            value = std::stod(kv.substr(eq + 1), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (eq == std::string::npos || used == 0 || used != kv.size() - eq - 1) {
            std::cerr << "--param expects key=number, got '" << kv << "'\n";
            return kExitUsage;
        }
        cfg.params[kv.substr(0, eq)] = value;
    }
    if (tol) {
        if (!(*tol > 0.0)) {
            std::cerr << "--tol must be positive\n";
            return kExitUsage;
        }
        cfg.tolerance = *tol;
    }
    if (gap_tol) {
        if (!(*gap_tol > 0.0)) {
            std::cerr << "--gap-tol must be positive\n";
            return kExitUsage;
        }
        cfg.gap_tolerance = *gap_tol;
    }
    return std::nullopt;
}

int run(const RunConfig& cfg, std::ostream& err) {
    try {
        switch (cfg.command) {
        case Command::Gen: return cmd_gen(cfg);
        case Command::Solve: return cmd_solve(cfg);
        case Command::Verify: return cmd_verify(cfg, err);
        case Command::Oracle: return cmd_oracle(cfg, err);
        case Command::SingleMenu: return cmd_single_menu(cfg);
        case Command::Sweep: return cmd_sweep(cfg, err);
        case Command::Curve: return cmd_curve(cfg);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_usage_error(e.code()) ? kExitUsage : kExitCheckFailed;
    }
    return kExitUsage;
}

} // namespace infosell::cli
