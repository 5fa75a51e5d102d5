#include "gridcharge/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gridcharge {

namespace {
constexpr double kPivotTol = 1e-9;
constexpr double kReducedCostTol = 1e-9;
}  // namespace

int StandardFormLP::add_variable(std::string label, double lo, double hi,
                                 double objective) {
    if (std::isnan(lo) || std::isnan(hi) || !std::isfinite(objective))
        throw std::runtime_error("lp: non-finite data for variable '" + label + "'");
    if (lo > hi)
        throw std::runtime_error("lp: lo > hi for variable '" + label + "'");
    objective_.push_back(objective);
    lo_.push_back(lo);
    hi_.push_back(hi);
    labels_.push_back(std::move(label));
    return num_vars() - 1;
}

void StandardFormLP::check_terms(const std::vector<LinearTerm>& terms) const {
    for (const auto& t : terms) {
        if (t.var < 0 || t.var >= num_vars())
            throw std::runtime_error("lp: row references undeclared variable " +
                                     std::to_string(t.var));
        if (!std::isfinite(t.coeff))
            throw std::runtime_error("lp: non-finite row coefficient");
    }
}

void StandardFormLP::add_le(std::vector<LinearTerm> terms, double bound,
                            std::string label) {
    check_terms(terms);
    if (!std::isfinite(bound)) throw std::runtime_error("lp: non-finite row bound");
    rows_.push_back({std::move(terms), bound, std::move(label)});
}

void StandardFormLP::add_ge(std::vector<LinearTerm> terms, double bound,
                            std::string label) {
    for (auto& t : terms) t.coeff = -t.coeff;
    add_le(std::move(terms), -bound, std::move(label));
}

void StandardFormLP::add_eq(std::vector<LinearTerm> terms, double bound,
                            std::string label) {
    add_le(terms, bound, label + "[ub]");
    add_ge(std::move(terms), bound, label + "[lb]");
}

namespace {

// Dense two-phase tableau simplex over the shifted problem
//   min c'y  s.t.  A y + s = b',  y, s >= 0
// with finite upper bounds appended as extra rows.
class SimplexTableau {
public:
    SimplexTableau(const StandardFormLP& p) : p_(p) {}

    LpSolution run() {
        build();
        // Phase 1: drive artificials to zero
        if (n_art_ > 0) {
            std::vector<double> phase1_cost(n_cols_, 0.0);
            for (int j = art_begin_; j < n_cols_; ++j) phase1_cost[j] = 1.0;
            const auto st = optimize(phase1_cost, /*allow_artificials=*/true);
            if (st == LpStatus::failure) return {LpStatus::failure, {}, 0.0};
            double infeas = 0.0;
            for (int r = 0; r < n_rows_; ++r)
                if (basis_[r] >= art_begin_) infeas += rhs_[r];
            if (infeas > 1e-7 * std::max(1.0, rhs_scale_))
                return {LpStatus::infeasible, {}, 0.0};
            pivot_out_artificials();
        }
        const auto st = optimize(cost_, /*allow_artificials=*/false);
        if (st != LpStatus::optimal) return {st, {}, 0.0};
        return extract();
    }

private:
    void build() {
        const int n = p_.num_vars();
        // shifted rows: original rows plus finite upper bounds
        struct RawRow {
            std::vector<LinearTerm> terms;
            double bound;
        };
        std::vector<RawRow> raw;
        for (const auto& row : p_.rows()) {
            double b = row.bound;
            for (const auto& t : row.terms) {
                const double lo = p_.lower()[t.var];
                if (!std::isfinite(lo))
                    throw std::runtime_error("lp: variable '" + p_.var_label(t.var) +
                                             "' has no finite lower bound");
                b -= t.coeff * lo;
            }
            raw.push_back({row.terms, b});
        }
        for (int i = 0; i < n; ++i) {
            if (std::isfinite(p_.upper()[i]))
                raw.push_back({{{i, 1.0}}, p_.upper()[i] - p_.lower()[i]});
            else if (!std::isfinite(p_.lower()[i]))
                throw std::runtime_error("lp: free variables unsupported");
        }

        // scale every row by max(1, max|coeff|)
        n_rows_ = static_cast<int>(raw.size());
        std::vector<int> needs_art;
        for (int r = 0; r < n_rows_; ++r) {
            double scale = 1.0;
            for (const auto& t : raw[r].terms) scale = std::max(scale, std::abs(t.coeff));
            for (auto& t : raw[r].terms) t.coeff /= scale;
            raw[r].bound /= scale;
            if (raw[r].bound < 0.0) needs_art.push_back(r);
            rhs_scale_ = std::max(rhs_scale_, std::abs(raw[r].bound));
        }

        n_art_ = static_cast<int>(needs_art.size());
        art_begin_ = n + n_rows_;
        n_cols_ = art_begin_ + n_art_;
        tab_.assign(static_cast<size_t>(n_rows_) * n_cols_, 0.0);
        rhs_.assign(n_rows_, 0.0);
        basis_.assign(n_rows_, -1);
        cost_.assign(n_cols_, 0.0);
        for (int i = 0; i < n; ++i) cost_[i] = p_.objective()[i];

        int art = art_begin_;
        for (int r = 0; r < n_rows_; ++r) {
            const double sign = raw[r].bound < 0.0 ? -1.0 : 1.0;
            for (const auto& t : raw[r].terms) at(r, t.var) += sign * t.coeff;
            at(r, n + r) = sign;  // slack
            rhs_[r] = sign * raw[r].bound;
            if (sign < 0.0) {
                at(r, art) = 1.0;
                basis_[r] = art++;
            } else {
                basis_[r] = n + r;
            }
        }
    }

    double& at(int r, int c) { return tab_[static_cast<size_t>(r) * n_cols_ + c]; }
    double get(int r, int c) const { return tab_[static_cast<size_t>(r) * n_cols_ + c]; }

    LpStatus optimize(const std::vector<double>& cost, bool allow_artificials) {
        const int max_iter = 20000 + 50 * (n_rows_ + n_cols_);
        int degenerate_streak = 0;
        bool bland = false;

        // reduced-cost row d_j = c_j - c_B' B^-1 A_j, maintained across pivots
        reduced_.assign(n_cols_, 0.0);
        for (int j = 0; j < n_cols_; ++j) reduced_[j] = cost[j];
        for (int r = 0; r < n_rows_; ++r) {
            const double cb = cost[basis_[r]];
            if (cb == 0.0) continue;
            for (int j = 0; j < n_cols_; ++j) reduced_[j] -= cb * get(r, j);
        }

        const int limit = allow_artificials ? n_cols_ : art_begin_;
        for (int iter = 0; iter < max_iter; ++iter) {
            int entering = -1;
            double best = -kReducedCostTol;
            for (int j = 0; j < limit; ++j) {
                const double d = reduced_[j];
                if (d < best) {
                    if (bland) {
                        if (d < -kReducedCostTol) {
                            entering = j;
                            break;
                        }
                    } else {
                        best = d;
                        entering = j;
                    }
                }
            }
            if (entering < 0) return LpStatus::optimal;

            // ratio test, ties to lowest basis index (anti-cycling with Bland)
            int leaving = -1;
            double min_ratio = 0.0;
            for (int r = 0; r < n_rows_; ++r) {
                const double a = get(r, entering);
                if (a > kPivotTol) {
                    const double ratio = rhs_[r] / a;
                    if (leaving < 0 || ratio < min_ratio - 1e-12 ||
                        (ratio < min_ratio + 1e-12 && basis_[r] < basis_[leaving])) {
                        leaving = r;
                        min_ratio = ratio;
                    }
                }
            }
            if (leaving < 0) return LpStatus::unbounded;

            if (min_ratio < 1e-10) {
                if (++degenerate_streak > n_rows_ + 10) bland = true;
            } else {
                degenerate_streak = 0;
            }
            pivot(leaving, entering);
        }
        return LpStatus::failure;  // iteration limit: numerical breakdown
    }

    void pivot(int r, int c) {
        const double piv = get(r, c);
        const double inv = 1.0 / piv;
        for (int j = 0; j < n_cols_; ++j) at(r, j) *= inv;
        at(r, c) = 1.0;
        rhs_[r] *= inv;
        for (int i = 0; i < n_rows_; ++i) {
            if (i == r) continue;
            const double f = get(i, c);
            if (f == 0.0) continue;
            for (int j = 0; j < n_cols_; ++j) at(i, j) -= f * at(r, j);
            at(i, c) = 0.0;
            rhs_[i] -= f * rhs_[r];
        }
        if (rhs_[r] < 0.0 && rhs_[r] > -1e-11) rhs_[r] = 0.0;
        if (!reduced_.empty()) {
            const double d = reduced_[c];
            if (d != 0.0) {
                for (int j = 0; j < n_cols_; ++j) reduced_[j] -= d * at(r, j);
            }
            reduced_[c] = 0.0;
        }
        basis_[r] = c;
    }

    void pivot_out_artificials() {
        for (int r = 0; r < n_rows_; ++r) {
            if (basis_[r] < art_begin_) continue;
            int c = -1;
            for (int j = 0; j < art_begin_; ++j)
                if (std::abs(get(r, j)) > kPivotTol) {
                    c = j;
                    break;
                }
            if (c >= 0) pivot(r, c);
            // else: redundant row; harmless to leave the zero artificial basic
        }
    }

    LpSolution extract() const {
        const int n = p_.num_vars();
        LpSolution sol;
        sol.status = LpStatus::optimal;
        sol.values.assign(n, 0.0);
        for (int r = 0; r < n_rows_; ++r)
            if (basis_[r] < n) sol.values[basis_[r]] = rhs_[r];
        double obj = 0.0;
        for (int i = 0; i < n; ++i) {
            sol.values[i] += p_.lower()[i];
            // clamp roundoff into the box
            sol.values[i] = std::clamp(sol.values[i], p_.lower()[i], p_.upper()[i]);
            obj += p_.objective()[i] * sol.values[i];
        }
        sol.objective_value = obj;
        return sol;
    }

    const StandardFormLP& p_;
    std::vector<double> tab_, rhs_, cost_, reduced_;
    std::vector<int> basis_;
    int n_rows_ = 0, n_cols_ = 0, n_art_ = 0, art_begin_ = 0;
    double rhs_scale_ = 1.0;
};

}  // namespace

LpSolution solve_lp(const StandardFormLP& problem) {
    SimplexTableau t(problem);
    return t.run();
}

FeasibilityReport validate_solution(const StandardFormLP& problem,
                                    const std::vector<double>& candidate) {
    if (static_cast<int>(candidate.size()) != problem.num_vars())
        throw std::runtime_error("validate_solution: assignment covers " +
                                 std::to_string(candidate.size()) + " of " +
                                 std::to_string(problem.num_vars()) + " variables");
    FeasibilityReport rep;
    for (int i = 0; i < problem.num_vars(); ++i) {
        rep.max_bound_violation = std::max(
            {rep.max_bound_violation, problem.lower()[i] - candidate[i],
             candidate[i] - problem.upper()[i]});
        rep.objective_value += problem.objective()[i] * candidate[i];
    }
    for (const auto& row : problem.rows()) {
        double lhs = 0.0, scale = 1.0;
        for (const auto& t : row.terms) {
            lhs += t.coeff * candidate[t.var];
            scale = std::max(scale, std::abs(t.coeff));
        }
        rep.max_row_violation =
            std::max(rep.max_row_violation, (lhs - row.bound) / scale);
    }
    return rep;
}

std::string dump_lp(const StandardFormLP& problem) {
    std::ostringstream os;
    os << "min ";
    for (int i = 0; i < problem.num_vars(); ++i) {
        if (problem.objective()[i] == 0.0) continue;
        os << (problem.objective()[i] >= 0 ? "+ " : "- ")
           << std::abs(problem.objective()[i]) << " " << problem.var_label(i) << " ";
    }
    os << "\n";
    for (const auto& row : problem.rows()) {
        if (!row.label.empty()) os << row.label << ": ";
        for (const auto& t : row.terms)
            os << (t.coeff >= 0 ? "+ " : "- ") << std::abs(t.coeff) << " "
               << problem.var_label(t.var) << " ";
        os << "<= " << row.bound << "\n";
    }
    for (int i = 0; i < problem.num_vars(); ++i)
        os << problem.lower()[i] << " <= " << problem.var_label(i) << " <= "
           << problem.upper()[i] << "\n";
    return os.str();
}

}  // namespace gridcharge
