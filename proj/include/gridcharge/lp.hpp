#pragma once

#include <limits>
#include <string>
#include <vector>

namespace gridcharge {

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kFeasibilityTol = 1e-6;

struct LinearTerm {
    int var;
    double coeff;
};

// One inequality row: sum(terms) <= bound.
struct LpRow {
    std::vector<LinearTerm> terms;
    double bound = 0.0;
    std::string label;
};

// Canonical carrier for every optimization problem in the project:
// min c'z  s.t.  A z <= b,  lo <= z <= hi.
// >= rows are stored negated; equalities as paired inequalities.
class StandardFormLP {
public:
    int add_variable(std::string label, double lo, double hi, double objective);
    void add_le(std::vector<LinearTerm> terms, double bound, std::string label = {});
    void add_ge(std::vector<LinearTerm> terms, double bound, std::string label = {});
    void add_eq(std::vector<LinearTerm> terms, double bound, std::string label = {});

    int num_vars() const { return static_cast<int>(objective_.size()); }
    int num_rows() const { return static_cast<int>(rows_.size()); }
    const std::vector<double>& objective() const { return objective_; }
    const std::vector<double>& lower() const { return lo_; }
    const std::vector<double>& upper() const { return hi_; }
    const std::vector<LpRow>& rows() const { return rows_; }
    const std::string& var_label(int i) const { return labels_[i]; }

private:
    void check_terms(const std::vector<LinearTerm>& terms) const;

    std::vector<double> objective_, lo_, hi_;
    std::vector<std::string> labels_;
    std::vector<LpRow> rows_;
};

enum class LpStatus { optimal, infeasible, unbounded, failure };

struct LpSolution {
    LpStatus status = LpStatus::failure;
    std::vector<double> values;
    double objective_value = 0.0;
};

// Two-phase dense simplex. Dantzig pricing with a Bland's-rule fallback
// after a run of degenerate pivots; ties broken by lowest index.
LpSolution solve_lp(const StandardFormLP& problem);

struct FeasibilityReport {
    double max_bound_violation = 0.0;
    double max_row_violation = 0.0;  // after scaling each row by max(1, max|coeff|)
    double objective_value = 0.0;
};

FeasibilityReport validate_solution(const StandardFormLP& problem,
                                    const std::vector<double>& candidate);

// Human-readable dump, one constraint per line.
std::string dump_lp(const StandardFormLP& problem);

}  // namespace gridcharge
