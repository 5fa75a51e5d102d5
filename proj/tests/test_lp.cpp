#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "gridcharge/lp.hpp"
#include "gridcharge/rng.hpp"

using namespace gridcharge;

namespace {

// Brute-force oracle: the optimum of a bounded feasible LP sits on a vertex,
// i.e. the intersection of n active constraints drawn from rows and bounds.
struct Hyperplane {
    std::vector<double> a;
    double b;
};

double vertex_enumeration_min(const StandardFormLP& lp, bool& found) {
    const int n = lp.num_vars();
    std::vector<Hyperplane> planes;
    for (const auto& row : lp.rows()) {
        Hyperplane h{std::vector<double>(n, 0.0), row.bound};
        for (const auto& t : row.terms) h.a[t.var] += t.coeff;
        planes.push_back(std::move(h));
    }
    for (int i = 0; i < n; ++i) {
        if (std::isfinite(lp.lower()[i])) {
            Hyperplane h{std::vector<double>(n, 0.0), lp.lower()[i]};
            h.a[i] = 1.0;
            planes.push_back(std::move(h));
        }
        if (std::isfinite(lp.upper()[i])) {
            Hyperplane h{std::vector<double>(n, 0.0), lp.upper()[i]};
            h.a[i] = 1.0;
            planes.push_back(std::move(h));
        }
    }

    const int p = static_cast<int>(planes.size());
    std::vector<int> pick(n);
    double best = std::numeric_limits<double>::infinity();
    found = false;

    auto feasible = [&](const Eigen::VectorXd& x) {
        for (int i = 0; i < n; ++i)
            if (x(i) < lp.lower()[i] - 1e-7 || x(i) > lp.upper()[i] + 1e-7) return false;
        for (const auto& row : lp.rows()) {
            double lhs = 0.0, scale = 1.0;
            for (const auto& t : row.terms) {
                lhs += t.coeff * x(t.var);
                scale = std::max(scale, std::abs(t.coeff));
            }
            if (lhs > row.bound + 1e-7 * scale) return false;
        }
        return true;
    };

    // iterate over all n-subsets of the planes
    auto recurse = [&](auto&& self, int start, int depth) -> void {
        if (depth == n) {
            Eigen::MatrixXd A(n, n);
            Eigen::VectorXd b(n);
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) A(r, c) = planes[pick[r]].a[c];
                b(r) = planes[pick[r]].b;
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
            if (!lu.isInvertible()) return;
            const Eigen::VectorXd x = lu.solve(b);
            if (!feasible(x)) return;
            double obj = 0.0;
            for (int i = 0; i < n; ++i) obj += lp.objective()[i] * x(i);
            best = std::min(best, obj);
            found = true;
            return;
        }
        for (int i = start; i <= p - (n - depth); ++i) {
            pick[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    recurse(recurse, 0, 0);
    return best;
}

StandardFormLP random_bounded_lp(Rng& rng, int n_vars, int n_rows) {
    StandardFormLP lp;
    std::vector<double> interior(n_vars);
    for (int i = 0; i < n_vars; ++i) {
        const double hi = rng.uniform(1.0, 5.0);
        interior[i] = rng.uniform(0.0, hi);
        lp.add_variable("z" + std::to_string(i), 0.0, hi, rng.uniform(-1.0, 1.0));
    }
    // rows pass through no vertex trouble: each holds at an interior point
    for (int r = 0; r < n_rows; ++r) {
        std::vector<LinearTerm> terms;
        double lhs = 0.0;
        for (int i = 0; i < n_vars; ++i) {
            const double c = rng.uniform(-2.0, 2.0);
            terms.push_back({i, c});
            lhs += c * interior[i];
        }
        lp.add_le(std::move(terms), lhs + rng.uniform(0.0, 2.0));
    }
    return lp;
}

}  // namespace

TEST_CASE("one variable pushed to its upper bound") {
    StandardFormLP lp;
    lp.add_variable("z", 0.0, kLpInfinity, -1.0);
    lp.add_le({{0, 1.0}}, 1.0);
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.values[0] == doctest::Approx(1.0));
    CHECK(sol.objective_value == doctest::Approx(-1.0));
}

TEST_CASE("contradictory bounds detected as infeasible") {
    StandardFormLP lp;
    lp.add_variable("z", 0.0, kLpInfinity, 1.0);
    lp.add_le({{0, 1.0}}, -1.0);
    CHECK(solve_lp(lp).status == LpStatus::infeasible);
}

TEST_CASE("unbounded descent detected") {
    StandardFormLP lp;
    lp.add_variable("z", 0.0, kLpInfinity, -1.0);
    CHECK(solve_lp(lp).status == LpStatus::unbounded);
}

TEST_CASE("two-slot transportation instance") {
    StandardFormLP lp;
    lp.add_variable("y0", 0.0, 1.0, 1.0);
    lp.add_variable("y1", 0.0, 1.0, 2.0);
    lp.add_ge({{0, 1.0}, {1, 1.0}}, 1.5, "demand");
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.values[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.values[1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(sol.objective_value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("validate_solution reports violations and objective") {
    StandardFormLP lp;
    lp.add_variable("z0", 0.0, kLpInfinity, 3.0);
    lp.add_variable("z1", 0.0, kLpInfinity, 1.0);
    lp.add_ge({{0, 1.0}, {1, 1.0}}, 1.0, "demand");

    SUBCASE("all-zeros violates the demand row by 1") {
        const auto rep = validate_solution(lp, {0.0, 0.0});
        CHECK(rep.max_row_violation == doctest::Approx(1.0));
        CHECK(rep.max_bound_violation == doctest::Approx(0.0));
    }
    SUBCASE("solver output is feasible") {
        const auto sol = solve_lp(lp);
        REQUIRE(sol.status == LpStatus::optimal);
        const auto rep = validate_solution(lp, sol.values);
        CHECK(rep.max_row_violation <= kFeasibilityTol);
        CHECK(rep.max_bound_violation <= kFeasibilityTol);
        CHECK(rep.objective_value == doctest::Approx(sol.objective_value));
    }
    SUBCASE("perturbing one variable shifts the objective linearly") {
        const auto sol = solve_lp(lp);
        auto bumped = sol.values;
        bumped[0] += 0.25;
        const auto rep = validate_solution(lp, bumped);
        CHECK(rep.objective_value ==
              doctest::Approx(sol.objective_value + 3.0 * 0.25).epsilon(1e-12));
    }
    SUBCASE("missing variable is an error") {
        CHECK_THROWS(validate_solution(lp, {0.0}));
    }
}

TEST_CASE("positive objective scaling preserves the argmin") {
    Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform(0.0, 4.0));
        const auto lp = random_bounded_lp(rng, n, 3);
        const auto sol = solve_lp(lp);
        REQUIRE(sol.status == LpStatus::optimal);

        const double k = 3.5;
        StandardFormLP scaled;
        for (int i = 0; i < lp.num_vars(); ++i)
            scaled.add_variable(lp.var_label(i), lp.lower()[i], lp.upper()[i],
                                k * lp.objective()[i]);
        for (const auto& row : lp.rows()) scaled.add_le(row.terms, row.bound);
        const auto sol2 = solve_lp(scaled);
        REQUIRE(sol2.status == LpStatus::optimal);
        CHECK(sol2.objective_value ==
              doctest::Approx(k * sol.objective_value).epsilon(1e-9));
    }
}

TEST_CASE("redundant constraint leaves the optimum unchanged") {
    StandardFormLP lp;
    lp.add_variable("y0", 0.0, 1.0, 1.0);
    lp.add_variable("y1", 0.0, 1.0, 2.0);
    lp.add_ge({{0, 1.0}, {1, 1.0}}, 1.5, "demand");
    const double base = solve_lp(lp).objective_value;
    lp.add_le({{0, 1.0}, {1, 1.0}}, 2.0, "implied-by-caps");
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective_value == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("random instances agree with the vertex-enumeration oracle") {
    Rng rng(7);
    int solved = 0;
    while (solved < 60) {
        const int n = 2 + static_cast<int>(rng.uniform(0.0, 5.0));  // 2..6
        const int m = 1 + static_cast<int>(rng.uniform(0.0, 5.0));
        const auto lp = random_bounded_lp(rng, n, m);
        const auto sol = solve_lp(lp);
        REQUIRE(sol.status == LpStatus::optimal);  // feasible by construction
        bool found = false;
        const double oracle = vertex_enumeration_min(lp, found);
        REQUIRE(found);
        CHECK(std::abs(sol.objective_value - oracle) <=
              1e-7 * std::max(1.0, std::abs(oracle)));
        const auto rep = validate_solution(lp, sol.values);
        CHECK(rep.max_row_violation <= kFeasibilityTol);
        CHECK(rep.max_bound_violation <= kFeasibilityTol);
        ++solved;
    }
}

TEST_CASE("malformed construction is rejected before solving") {
    StandardFormLP lp;
    lp.add_variable("z", 0.0, 1.0, 1.0);
    CHECK_THROWS(lp.add_le({{5, 1.0}}, 0.0));  // undeclared variable
    CHECK_THROWS(lp.add_variable("bad", 2.0, 1.0, 0.0));  // lo > hi
    CHECK_THROWS(lp.add_variable("nan", 0.0, 1.0,
                                 std::numeric_limits<double>::quiet_NaN()));
}

TEST_CASE("dump is one constraint per line with labels") {
    StandardFormLP lp;
    lp.add_variable("y0", 0.0, 1.0, 1.0);
    lp.add_ge({{0, 1.0}}, 0.5, "demand");
    const std::string text = dump_lp(lp);
    CHECK(text.find("y0") != std::string::npos);
    CHECK(text.find("demand") != std::string::npos);
}
