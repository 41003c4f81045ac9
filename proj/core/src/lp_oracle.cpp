#include "infosell/lp_oracle.hpp"

#include "infosell/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace infosell {

namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr double kPhaseOneTolerance = 1e-7;
constexpr double kHarrisSlack = 1e-9;
constexpr int kRefreshInterval = 32;

std::string fmt(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : cols_(cols), a_(rows, std::vector<double>(cols + 1, 0.0)), basis_(rows, 0),
          reduced_(cols + 1, 0.0) {}

    std::vector<double>& row(std::size_t r) { return a_[r]; }
    std::size_t& basis(std::size_t r) { return basis_[r]; }
    std::size_t rows() const { return a_.size(); }
    double rhs(std::size_t r) const { return a_[r][cols_]; }

    // Keeps a copy of the initial rows so the tableau can be rebuilt later.
    void freeze() { original_ = a_; }

    // Reduced costs d_j = c_j - c_B B^{-1} A_j for the given cost vector.
    void price(const std::vector<double>& cost) {
        cost_ = cost;
        for (std::size_t j = 0; j <= cols_; ++j) reduced_[j] = j < cols_ ? cost[j] : 0.0;
        for (std::size_t r = 0; r < rows(); ++r) {
            const double cb = cost[basis_[r]];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) reduced_[j] -= cb * a_[r][j];
        }
    }

    // Bland's rule picks the entering column among allowed[j]. The leaving
    // row uses a two-pass Harris test: the first pass finds the step allowed
    // when every basic variable may dip kHarrisSlack below zero, the second
    // takes the largest pivot entry among rows blocking within that step.
    LpStatus optimize(const std::vector<bool>& allowed, int& iterations, int max_iterations) {
        int since_refresh = 0;
        while (true) {
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (allowed[j] && reduced_[j] > kPivotTolerance) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols_) {
                if (since_refresh == 0 || !reinvert()) return LpStatus::Optimal;
                since_refresh = 0;
                continue;
            }
            if (iterations >= max_iterations) return LpStatus::IterationLimit;

            double step = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < rows(); ++r) {
                const double coef = a_[r][enter];
                if (coef > kPivotTolerance) step = std::min(step, (std::max(0.0, a_[r][cols_]) + kHarrisSlack) / coef);
            }
            if (!std::isfinite(step)) return LpStatus::Unbounded;
            std::size_t leave = rows();
            for (std::size_t r = 0; r < rows(); ++r) {
                const double coef = a_[r][enter];
                if (coef <= kPivotTolerance || std::max(0.0, a_[r][cols_]) / coef > step) continue;
                if (leave == rows() || coef > a_[leave][enter] ||
                    (coef == a_[leave][enter] && basis_[r] < basis_[leave])) {
                    leave = r;
                }
            }
            pivot(leave, enter);
            ++iterations;
            if (++since_refresh >= kRefreshInterval && reinvert()) since_refresh = 0;
        }
    }

    void pivot(std::size_t r, std::size_t j) {
        auto& pr = a_[r];
        const double inv = 1.0 / pr[j];
        for (double& x : pr) x *= inv;
        pr[j] = 1.0;
        for (std::size_t k = 0; k < rows(); ++k) {
            if (k == r) continue;
            const double factor = a_[k][j];
            if (factor == 0.0) continue;
            for (std::size_t c = 0; c <= cols_; ++c) a_[k][c] -= factor * pr[c];
            a_[k][j] = 0.0;
            if (std::abs(a_[k][cols_]) < 1e-13) a_[k][cols_] = 0.0;
        }
        const double factor = reduced_[j];
        if (factor != 0.0) {
            for (std::size_t c = 0; c <= cols_; ++c) reduced_[c] -= factor * pr[c];
            reduced_[j] = 0.0;
        }
        basis_[r] = j;
    }

    // Recomputes B^{-1} [A | b] from the frozen rows for the current basis by
    // Gaussian elimination with partial pivoting, discarding accumulated
    // rounding. Returns false (and leaves the tableau alone) if B looks singular.
    bool reinvert() {
        const std::size_t m = rows();
        if (original_.size() != m) return false;
        const std::size_t width = m + cols_ + 1;
        std::vector<std::vector<double>> work(m, std::vector<double>(width, 0.0));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t k = 0; k < m; ++k) work[i][k] = original_[i][basis_[k]];
            std::copy(original_[i].begin(), original_[i].end(), work[i].begin() + static_cast<std::ptrdiff_t>(m));
        }
        for (std::size_t k = 0; k < m; ++k) {
            std::size_t p = k;
            for (std::size_t i = k + 1; i < m; ++i) {
                if (std::abs(work[i][k]) > std::abs(work[p][k])) p = i;
            }
            if (std::abs(work[p][k]) < 1e-12) return false;
            std::swap(work[p], work[k]);
            const double inv = 1.0 / work[k][k];
            for (double& x : work[k]) x *= inv;
            for (std::size_t i = 0; i < m; ++i) {
                if (i == k) continue;
                const double factor = work[i][k];
                if (factor == 0.0) continue;
                for (std::size_t c = k; c < width; ++c) work[i][c] -= factor * work[k][c];
            }
        }
        for (std::size_t k = 0; k < m; ++k) {
            a_[k].assign(work[k].begin() + static_cast<std::ptrdiff_t>(m), work[k].end());
            for (std::size_t i = 0; i < m; ++i) a_[i][basis_[k]] = i == k ? 1.0 : 0.0;
        }
        for (std::size_t k = 0; k < m; ++k) {
            if (std::abs(a_[k][cols_]) < 1e-13) a_[k][cols_] = 0.0;
        }
        price(cost_);
        return true;
    }

private:
    std::size_t cols_;
    std::vector<std::vector<double>> a_;
    std::vector<std::vector<double>> original_;
    std::vector<std::size_t> basis_;
    std::vector<double> reduced_;
    std::vector<double> cost_;
};

} // namespace

std::string_view to_string(LpStatus status) noexcept {
    switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
    case LpStatus::IterationLimit: return "IterationLimit";
    }
    return "Unknown";
}

LpSolution simplex_maximize(const LinearProgram& lp, int max_iterations) {
    const std::size_t n = lp.num_variables();

    // Shift to x' = x - lower >= 0 and turn finite upper bounds into rows.
    struct StdRow {
        std::vector<double> a;
        RowSense sense;
        double b;
    };
    std::vector<StdRow> rows;
    for (const auto& row : lp.rows) {
        double b = row.rhs;
        for (std::size_t j = 0; j < n; ++j) b -= row.coeffs[j] * lp.bounds[j].lower;
        rows.push_back({row.coeffs, row.sense, b});
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(lp.bounds[j].lower)) {
            throw Error(ErrorCode::BadParams, "simplex needs finite lower bounds");
        }
        if (std::isfinite(lp.bounds[j].upper)) {
            std::vector<double> a(n, 0.0);
            a[j] = 1.0;
            rows.push_back({std::move(a), RowSense::LessEqual, lp.bounds[j].upper - lp.bounds[j].lower});
        }
    }
    for (auto& row : rows) {
        if (row.b < 0.0) {
            for (double& x : row.a) x = -x;
            row.b = -row.b;
            if (row.sense == RowSense::LessEqual) row.sense = RowSense::GreaterEqual;
            else if (row.sense == RowSense::GreaterEqual) row.sense = RowSense::LessEqual;
        }
    }

    std::size_t slack_count = 0;
    std::size_t artificial_count = 0;
    for (const auto& row : rows) {
        if (row.sense != RowSense::Equal) ++slack_count;
        if (row.sense != RowSense::LessEqual) ++artificial_count;
    }
    const std::size_t cols = n + slack_count + artificial_count;
    const std::size_t first_artificial = n + slack_count;

    Tableau tab(rows.size(), cols);
    std::size_t next_slack = n;
    std::size_t next_artificial = first_artificial;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        auto& tr = tab.row(r);
        std::copy(rows[r].a.begin(), rows[r].a.end(), tr.begin());
        tr[cols] = rows[r].b;
        switch (rows[r].sense) {
        case RowSense::LessEqual:
            tr[next_slack] = 1.0;
            tab.basis(r) = next_slack++;
            break;
        case RowSense::GreaterEqual:
            tr[next_slack++] = -1.0;
            tr[next_artificial] = 1.0;
            tab.basis(r) = next_artificial++;
            break;
        case RowSense::Equal:
            tr[next_artificial] = 1.0;
            tab.basis(r) = next_artificial++;
            break;
        }
    }

    tab.freeze();

    LpSolution sol;
    std::vector<bool> allowed(cols, true);

    if (artificial_count > 0) {
        std::vector<double> phase_one(cols, 0.0);
        for (std::size_t j = first_artificial; j < cols; ++j) phase_one[j] = -1.0;
        tab.price(phase_one);
        sol.status = tab.optimize(allowed, sol.iterations, max_iterations);
        if (sol.status != LpStatus::Optimal) return sol;

        double infeasibility = 0.0;
        double scale = 1.0;
        for (std::size_t r = 0; r < tab.rows(); ++r) {
            if (tab.basis(r) >= first_artificial) infeasibility += tab.rhs(r);
            scale = std::max(scale, std::abs(rows[r].b));
        }
        if (infeasibility > kPhaseOneTolerance * scale) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        // Pivot leftover artificials out where possible. Their level is within
        // tolerance of zero, and dropping it first keeps a small pivot from
        // spreading it into the other rows.
        for (std::size_t r = 0; r < tab.rows(); ++r) {
            if (tab.basis(r) < first_artificial) continue;
            tab.row(r)[cols] = 0.0;
            std::size_t best = first_artificial;
            double magnitude = kPivotTolerance;
            for (std::size_t j = 0; j < first_artificial; ++j) {
                if (std::abs(tab.row(r)[j]) > magnitude) {
                    magnitude = std::abs(tab.row(r)[j]);
                    best = j;
                }
            }
            if (best < first_artificial) tab.pivot(r, best);
        }
        for (std::size_t j = first_artificial; j < cols; ++j) allowed[j] = false;
    }

    std::vector<double> cost(cols, 0.0);
    std::copy(lp.objective.begin(), lp.objective.end(), cost.begin());
    tab.price(cost);
    sol.status = tab.optimize(allowed, sol.iterations, max_iterations);

    sol.x.assign(n, 0.0);
    for (std::size_t r = 0; r < tab.rows(); ++r) {
        if (tab.basis(r) < n) sol.x[tab.basis(r)] = std::max(0.0, tab.rhs(r));
    }
    for (std::size_t j = 0; j < n; ++j) sol.x[j] += lp.bounds[j].lower;
    sol.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];
    return sol;
}

LinearProgram build_lp(const Instance& inst) {
    const std::size_t n = inst.num_types();
    const std::size_t m = inst.num_states();
    if (n * m > kMaxLpCells) {
        throw Error(ErrorCode::TooLarge, std::to_string(n) + " x " + std::to_string(m) +
                                             " exceeds the dense LP size guard");
    }

    LinearProgram lp;
    lp.num_types = n;
    lp.num_states = m;
    const std::size_t vars = n * m + n;
    lp.objective.assign(vars, 0.0);
    lp.bounds.assign(vars, VariableBounds{});
    lp.variable_names.resize(vars);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t q = 0; q < m; ++q) {
            lp.variable_names[lp.pi_index(q, i)] = "pi_" + std::to_string(q) + "_" + std::to_string(i);
            lp.bounds[lp.pi_index(q, i)].upper = 1.0;
        }
        lp.variable_names[lp.pay_index(i)] = "p_" + std::to_string(i);
        lp.objective[lp.pay_index(i)] = inst.types.f(i);
    }

    for (std::size_t i = 0; i < n; ++i) {
        LpRow row;
        row.name = "IR_" + std::to_string(i);
        row.coeffs.assign(vars, 0.0);
        for (std::size_t q = 0; q < m; ++q) row.coeffs[lp.pi_index(q, i)] = inst.states[q].g * value(inst, q, i);
        row.coeffs[lp.pay_index(i)] = -1.0;
        row.sense = RowSense::GreaterEqual;
        row.rhs = std::max(0.0, prior_value(inst, i));
        lp.rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            LpRow row;
            row.name = "IC_" + std::to_string(i) + "_" + std::to_string(j);
            row.coeffs.assign(vars, 0.0);
            for (std::size_t q = 0; q < m; ++q) {
                const double w = inst.states[q].g * value(inst, q, i);
                row.coeffs[lp.pi_index(q, i)] += w;
                row.coeffs[lp.pi_index(q, j)] -= w;
            }
            row.coeffs[lp.pay_index(i)] = -1.0;
            row.coeffs[lp.pay_index(j)] = 1.0;
            row.sense = RowSense::GreaterEqual;
            row.rhs = 0.0;
            lp.rows.push_back(std::move(row));
        }
    }
    return lp;
}

OracleSolution solve_lp(const LinearProgram& lp) {
    const LpSolution raw = simplex_maximize(lp);
    switch (raw.status) {
    case LpStatus::Optimal: break;
    case LpStatus::Infeasible: throw Error(ErrorCode::Infeasible, "LP has no feasible point");
    case LpStatus::Unbounded: throw Error(ErrorCode::Unbounded, "LP objective is unbounded");
    case LpStatus::IterationLimit:
        throw Error(ErrorCode::IterationLimit, "simplex stopped after " + std::to_string(raw.iterations));
    }

    OracleSolution out;
    out.status = raw.status;
    out.revenue = raw.objective;
    out.iterations = raw.iterations;
    out.mechanism.pi.assign(lp.num_states, std::vector<double>(lp.num_types, 0.0));
    out.mechanism.pay.assign(lp.num_types, 0.0);
    for (std::size_t i = 0; i < lp.num_types; ++i) {
        for (std::size_t q = 0; q < lp.num_states; ++q) {
            out.mechanism.pi[q][i] = std::clamp(raw.x[lp.pi_index(q, i)], 0.0, 1.0);
        }
        out.mechanism.pay[i] = raw.x[lp.pay_index(i)];
    }
    return out;
}

OracleSolution solve_oracle(const Instance& inst) { return solve_lp(build_lp(inst)); }

OracleReport compare(const Instance& inst, const Mechanism& closed, const OracleSolution& oracle) {
    OracleReport rep;
    rep.closed_revenue = revenue(inst, closed);
    rep.oracle_revenue = oracle.revenue;
    rep.gap = rep.closed_revenue - rep.oracle_revenue;
    rep.relative_gap = std::abs(rep.gap) / std::max(1.0, std::abs(rep.oracle_revenue));
    rep.dominance_ok = rep.oracle_revenue >= rep.closed_revenue - 1e-7;
    rep.oracle_feasibility = check_feasible(inst, oracle.mechanism, 1e-7);
    return rep;
}

void write_lp(std::ostream& os, const LinearProgram& lp) {
    os << "# infosell dense LP\n";
    os << "sense max\n";
    os << "shape types " << lp.num_types << " states " << lp.num_states << "\n";
    os << "variables " << lp.num_variables() << "\n";
    for (std::size_t j = 0; j < lp.num_variables(); ++j) {
        os << "var " << j << ' ' << lp.variable_names[j] << " lower " << fmt(lp.bounds[j].lower)
           << " upper " << fmt(lp.bounds[j].upper) << " obj " << fmt(lp.objective[j]) << "\n";
    }
    os << "rows " << lp.rows.size() << "\n";
    for (const auto& row : lp.rows) {
        os << "row " << row.name << ' ';
        switch (row.sense) {
        case RowSense::LessEqual: os << "<="; break;
        case RowSense::GreaterEqual: os << ">="; break;
        case RowSense::Equal: os << "="; break;
        }
        os << ' ' << fmt(row.rhs);
        for (std::size_t j = 0; j < row.coeffs.size(); ++j) {
            if (row.coeffs[j] != 0.0) os << ' ' << j << ':' << fmt(row.coeffs[j]);
        }
        os << "\n";
    }
}

} // namespace infosell
