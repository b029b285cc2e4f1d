#include "projconst/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "projconst/common.hpp"

namespace projconst::lp {

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kCostEps = 1e-7;
// Consecutive degenerate pivots before switching from Dantzig to Bland
// pivoting; Bland cannot cycle, so any stall is eventually broken.
constexpr int kBlandTrigger = 24;
// Rebuild the tableau from the original data at this pivot cadence to shed
// accumulated elimination error.
constexpr long kRefactorEvery = 64;

struct Tableau {
    int m = 0;
    int n_cols = 0;
    int rhs = 0;
    std::vector<std::vector<double>> rows;
    std::vector<double> cost_row;
    std::vector<int> basis;

    double& at(int i, int j) { return rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    double at(int i, int j) const {
        return rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
};

void eliminate_basis_cost(Tableau& t, const std::vector<double>& cost) {
    t.cost_row.assign(static_cast<std::size_t>(t.n_cols + 1), 0.0);
    for (int j = 0; j < t.n_cols; ++j)
        t.cost_row[static_cast<std::size_t>(j)] = cost[static_cast<std::size_t>(j)];
    for (int i = 0; i < t.m; ++i) {
        double cb = cost[static_cast<std::size_t>(t.basis[static_cast<std::size_t>(i)])];
        if (cb == 0.0) continue;
        for (int j = 0; j <= t.n_cols; ++j)
            t.cost_row[static_cast<std::size_t>(j)] -= cb * t.at(i, j);
    }
}

// Rebuilds rows = B^{-1} [A | b] for the current basis from the original
// data. Returns false when the basis matrix is numerically singular or the
// rebuilt point is infeasible beyond rounding; the caller then keeps the
// incrementally updated tableau.
bool refactorize(Tableau& t, const std::vector<std::vector<double>>& original,
                 const std::vector<double>& cost) {
    const int m = t.m;
    std::vector<std::vector<double>> b(static_cast<std::size_t>(m),
                                       std::vector<double>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            b[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                original[static_cast<std::size_t>(i)]
                        [static_cast<std::size_t>(t.basis[static_cast<std::size_t>(k)])];
    std::vector<std::vector<double>> rebuilt = original;

    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int i = col + 1; i < m; ++i)
            if (std::abs(b[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)]) >
                std::abs(b[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
                piv = i;
        if (std::abs(b[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]) < 1e-12)
            return false;
        std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(piv)]);
        std::swap(rebuilt[static_cast<std::size_t>(col)], rebuilt[static_cast<std::size_t>(piv)]);
        double inv = 1.0 / b[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
        for (auto& v : b[static_cast<std::size_t>(col)]) v *= inv;
        for (auto& v : rebuilt[static_cast<std::size_t>(col)]) v *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == col) continue;
            double f = b[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
            if (f == 0.0) continue;
            for (int k = 0; k < m; ++k)
                b[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] -=
                    f * b[static_cast<std::size_t>(col)][static_cast<std::size_t>(k)];
            for (std::size_t k = 0; k < rebuilt[static_cast<std::size_t>(i)].size(); ++k)
                rebuilt[static_cast<std::size_t>(i)][k] -= f * rebuilt[static_cast<std::size_t>(col)][k];
        }
    }
    // The permutation applied to the rows must follow the basis labels:
    // after full elimination row k holds the representation of basis[k]'s
    // column equal to e_k, so labels keep their positions.
    for (int i = 0; i < m; ++i)
        if (rebuilt[static_cast<std::size_t>(i)].back() < -1e-7) return false;
    for (int i = 0; i < m; ++i)
        rebuilt[static_cast<std::size_t>(i)].back() =
            std::max(0.0, rebuilt[static_cast<std::size_t>(i)].back());
    t.rows = std::move(rebuilt);
    eliminate_basis_cost(t, cost);
    return true;
}

void pivot(Tableau& t, int row, int col) {
    auto& pr = t.rows[static_cast<std::size_t>(row)];
    double inv = 1.0 / pr[static_cast<std::size_t>(col)];
    for (double& v : pr) v *= inv;
    pr[static_cast<std::size_t>(col)] = 1.0;
    for (int i = 0; i < t.m; ++i) {
        if (i == row) continue;
        auto& ri = t.rows[static_cast<std::size_t>(i)];
        double f = ri[static_cast<std::size_t>(col)];
        if (f == 0.0) continue;
        for (int j = 0; j <= t.n_cols; ++j)
            ri[static_cast<std::size_t>(j)] -= f * pr[static_cast<std::size_t>(j)];
        ri[static_cast<std::size_t>(col)] = 0.0;
    }
    double f = t.cost_row[static_cast<std::size_t>(col)];
    if (f != 0.0) {
        for (int j = 0; j <= t.n_cols; ++j)
            t.cost_row[static_cast<std::size_t>(j)] -= f * pr[static_cast<std::size_t>(j)];
        t.cost_row[static_cast<std::size_t>(col)] = 0.0;
    }
    t.basis[static_cast<std::size_t>(row)] = col;
}

}  // namespace

Solution solve(const Problem& problem, long iteration_cap_per_var) {
    const int n_orig = problem.num_vars;
    if (static_cast<int>(problem.c.size()) != n_orig ||
        static_cast<int>(problem.nonneg.size()) != n_orig)
        throw ArgumentError("lp::solve: c/nonneg size mismatch");
    if (problem.eq_lhs.size() != problem.eq_rhs.size() ||
        problem.ineq_lhs.size() != problem.ineq_rhs.size())
        throw ArgumentError("lp::solve: rhs size mismatch");

    // Column layout: split columns for the original variables (free vars
    // get a negative twin), one slack per inequality, then artificials for
    // the rows that cannot start on a slack: equalities, and inequalities
    // whose sign-normalized slack coefficient is -1 (negative rhs).
    std::vector<int> pos_col(static_cast<std::size_t>(n_orig));
    std::vector<int> neg_col(static_cast<std::size_t>(n_orig), -1);
    int n_cols = 0;
    for (int j = 0; j < n_orig; ++j) {
        pos_col[static_cast<std::size_t>(j)] = n_cols++;
        if (!problem.nonneg[static_cast<std::size_t>(j)]) neg_col[static_cast<std::size_t>(j)] = n_cols++;
    }
    const int n_eq = static_cast<int>(problem.eq_lhs.size());
    const int n_ineq = static_cast<int>(problem.ineq_lhs.size());
    const int m = n_eq + n_ineq;
    const int slack0 = n_cols;
    n_cols += n_ineq;

    std::vector<int> art_of_row(static_cast<std::size_t>(m), -1);
    const int art0 = n_cols;
    {
        int art = art0;
        for (int i = 0; i < n_eq; ++i) art_of_row[static_cast<std::size_t>(i)] = art++;
        for (int i = 0; i < n_ineq; ++i)
            if (problem.ineq_rhs[static_cast<std::size_t>(i)] < 0.0)
                art_of_row[static_cast<std::size_t>(n_eq + i)] = art++;
        n_cols = art;
    }

    Tableau t;
    t.m = m;
    t.n_cols = n_cols;
    t.rhs = n_cols;
    t.rows.assign(static_cast<std::size_t>(m),
                  std::vector<double>(static_cast<std::size_t>(n_cols + 1), 0.0));
    std::vector<double> row_sign(static_cast<std::size_t>(m), 1.0);

    auto fill_row = [&](int row, const std::vector<double>& lhs, double rhs_value) {
        if (static_cast<int>(lhs.size()) != n_orig)
            throw ArgumentError("lp::solve: constraint row length mismatch");
        double sign = rhs_value < 0.0 ? -1.0 : 1.0;
        row_sign[static_cast<std::size_t>(row)] = sign;
        for (int j = 0; j < n_orig; ++j) {
            double v = sign * lhs[static_cast<std::size_t>(j)];
            t.at(row, pos_col[static_cast<std::size_t>(j)]) = v;
            if (neg_col[static_cast<std::size_t>(j)] >= 0)
                t.at(row, neg_col[static_cast<std::size_t>(j)]) = -v;
        }
        t.at(row, t.rhs) = sign * rhs_value;
    };
    for (int i = 0; i < n_eq; ++i)
        fill_row(i, problem.eq_lhs[static_cast<std::size_t>(i)],
                 problem.eq_rhs[static_cast<std::size_t>(i)]);
    for (int i = 0; i < n_ineq; ++i)
        fill_row(n_eq + i, problem.ineq_lhs[static_cast<std::size_t>(i)],
                 problem.ineq_rhs[static_cast<std::size_t>(i)]);
    for (int i = 0; i < n_ineq; ++i)
        t.at(n_eq + i, slack0 + i) = row_sign[static_cast<std::size_t>(n_eq + i)];
    for (int row = 0; row < m; ++row)
        if (art_of_row[static_cast<std::size_t>(row)] >= 0)
            t.at(row, art_of_row[static_cast<std::size_t>(row)]) = 1.0;

    const std::vector<std::vector<double>> original = t.rows;

    t.basis.resize(static_cast<std::size_t>(m));
    for (int row = 0; row < m; ++row)
        t.basis[static_cast<std::size_t>(row)] = art_of_row[static_cast<std::size_t>(row)] >= 0
                                                     ? art_of_row[static_cast<std::size_t>(row)]
                                                     : slack0 + (row - n_eq);

    std::vector<double> cost(static_cast<std::size_t>(n_cols), 0.0);
    for (int j = 0; j < n_orig; ++j) {
        cost[static_cast<std::size_t>(pos_col[static_cast<std::size_t>(j)])] = problem.c[static_cast<std::size_t>(j)];
        if (neg_col[static_cast<std::size_t>(j)] >= 0)
            cost[static_cast<std::size_t>(neg_col[static_cast<std::size_t>(j)])] = -problem.c[static_cast<std::size_t>(j)];
    }

    Solution sol;
    const long iteration_cap = iteration_cap_per_var * static_cast<long>(n_cols + 1);

    // Dantzig pivoting with a Bland fallback on a degeneracy streak, and a
    // two-pass ratio test that prefers large pivot magnitudes among the
    // near-minimal ratios.
    auto run_simplex = [&](const std::vector<double>& active_cost) -> bool {
        const int scan_end = art0;  // artificials never re-enter
        int degenerate_streak = 0;
        long since_refactor = 0;
        while (true) {
            if (++sol.iterations > iteration_cap) {
                sol.status = Status::iteration_limit;
                return false;
            }
            if (++since_refactor >= kRefactorEvery) {
                since_refactor = 0;
                refactorize(t, original, active_cost);
            }
            const bool bland = degenerate_streak >= kBlandTrigger;

            int enter = -1;
            if (bland) {
                for (int j = 0; j < scan_end; ++j)
                    if (t.cost_row[static_cast<std::size_t>(j)] < -kCostEps) {
                        enter = j;
                        break;
                    }
            } else {
                double most_negative = -kCostEps;
                for (int j = 0; j < scan_end; ++j)
                    if (t.cost_row[static_cast<std::size_t>(j)] < most_negative) {
                        most_negative = t.cost_row[static_cast<std::size_t>(j)];
                        enter = j;
                    }
            }
            if (enter < 0) return true;

            // Pass 1: the minimal ratio. Pass 2: among rows within a hair
            // of it, the largest pivot (Bland mode: smallest basis index).
            double min_ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i) {
                double a = t.at(i, enter);
                if (a <= kPivotEps) continue;
                min_ratio = std::min(min_ratio, t.at(i, t.rhs) / a);
            }
            int leave = -1;
            if (min_ratio < std::numeric_limits<double>::infinity()) {
                double limit = min_ratio + 1e-9 * (1.0 + std::abs(min_ratio));
                for (int i = 0; i < m; ++i) {
                    double a = t.at(i, enter);
                    if (a <= kPivotEps) continue;
                    if (t.at(i, t.rhs) / a > limit) continue;
                    if (leave < 0) {
                        leave = i;
                    } else if (bland) {
                        if (t.basis[static_cast<std::size_t>(i)] <
                            t.basis[static_cast<std::size_t>(leave)])
                            leave = i;
                    } else if (a > t.at(leave, enter)) {
                        leave = i;
                    }
                }
            }
            if (leave < 0) {
                // No usable pivot: a decisively improving, genuinely
                // nonpositive column is an unbounded ray; a marginal one is
                // noise and the column is masked until a refactorization.
                bool significant = t.cost_row[static_cast<std::size_t>(enter)] < -1e-4;
                bool nonpositive = true;
                for (int i = 0; i < m && nonpositive; ++i)
                    if (t.at(i, enter) > kPivotEps) nonpositive = false;
                if (significant && nonpositive) {
                    sol.status = Status::unbounded;
                    return false;
                }
                t.cost_row[static_cast<std::size_t>(enter)] = 0.0;
                continue;
            }
            degenerate_streak = t.at(leave, t.rhs) <= kPivotEps ? degenerate_streak + 1 : 0;
            pivot(t, leave, enter);
        }
    };

    // Phase 1: drive the artificials to zero.
    if (n_cols > art0) {
        std::vector<double> phase1_cost(static_cast<std::size_t>(n_cols), 0.0);
        for (int j = art0; j < n_cols; ++j) phase1_cost[static_cast<std::size_t>(j)] = 1.0;
        eliminate_basis_cost(t, phase1_cost);
        if (!run_simplex(phase1_cost)) return sol;
        double infeas = -t.cost_row[static_cast<std::size_t>(t.rhs)];
        if (infeas > 1e-7) {
            sol.status = Status::infeasible;
            return sol;
        }
        // Pivot leftover basic artificials out where a structural column is
        // available; rows without one are redundant and stay pinned at 0.
        for (int i = 0; i < m; ++i) {
            if (t.basis[static_cast<std::size_t>(i)] < art0) continue;
            int col = -1;
            for (int j = 0; j < art0; ++j)
                if (std::abs(t.at(i, j)) > 1e-7) {
                    col = j;
                    break;
                }
            if (col >= 0) pivot(t, i, col);
        }
    }

    eliminate_basis_cost(t, cost);
    bool ok = run_simplex(cost);

    // Polish the final point and duals from the original data.
    refactorize(t, original, cost);

    sol.x.assign(static_cast<std::size_t>(n_orig), 0.0);
    for (int i = 0; i < m; ++i) {
        int b = t.basis[static_cast<std::size_t>(i)];
        double v = t.at(i, t.rhs);
        for (int j = 0; j < n_orig; ++j) {
            if (b == pos_col[static_cast<std::size_t>(j)]) sol.x[static_cast<std::size_t>(j)] += v;
            if (b == neg_col[static_cast<std::size_t>(j)]) sol.x[static_cast<std::size_t>(j)] -= v;
        }
    }
    sol.objective = 0.0;
    for (int j = 0; j < n_orig; ++j)
        sol.objective += problem.c[static_cast<std::size_t>(j)] * sol.x[static_cast<std::size_t>(j)];

    // Duals y = c_B^T B^{-1}. Columns of B^{-1}: a row with an artificial
    // carries it directly; otherwise sign times the slack column serves.
    // The row-sign normalization transfers once either way (and cancels
    // against the slack's own sign).
    sol.dual_eq.assign(static_cast<std::size_t>(n_eq), 0.0);
    sol.dual_ineq.assign(static_cast<std::size_t>(n_ineq), 0.0);
    auto basis_cost_dot = [&](int col) {
        double acc = 0.0;
        for (int r = 0; r < m; ++r)
            acc += cost[static_cast<std::size_t>(t.basis[static_cast<std::size_t>(r)])] *
                   t.at(r, col);
        return acc;
    };
    auto row_dual = [&](int row) {
        int art = art_of_row[static_cast<std::size_t>(row)];
        if (art >= 0) return row_sign[static_cast<std::size_t>(row)] * basis_cost_dot(art);
        return basis_cost_dot(slack0 + (row - n_eq));
    };
    for (int i = 0; i < n_eq; ++i) sol.dual_eq[static_cast<std::size_t>(i)] = row_dual(i);
    for (int i = 0; i < n_ineq; ++i)
        sol.dual_ineq[static_cast<std::size_t>(i)] = row_dual(n_eq + i);

    sol.dual_objective = 0.0;
    for (int i = 0; i < n_eq; ++i)
        sol.dual_objective += sol.dual_eq[static_cast<std::size_t>(i)] * problem.eq_rhs[static_cast<std::size_t>(i)];
    for (int i = 0; i < n_ineq; ++i)
        sol.dual_objective += sol.dual_ineq[static_cast<std::size_t>(i)] * problem.ineq_rhs[static_cast<std::size_t>(i)];

    // Dual feasibility residual over the original columns:
    //   A^T y <= c (nonneg vars), A^T y == c (free vars), y <= 0 on <=-rows.
    double dres = 0.0;
    for (int i = 0; i < n_ineq; ++i)
        dres = std::max(dres, sol.dual_ineq[static_cast<std::size_t>(i)]);
    for (int j = 0; j < n_orig; ++j) {
        double aty = 0.0;
        for (int i = 0; i < n_eq; ++i)
            aty += problem.eq_lhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                   sol.dual_eq[static_cast<std::size_t>(i)];
        for (int i = 0; i < n_ineq; ++i)
            aty += problem.ineq_lhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                   sol.dual_ineq[static_cast<std::size_t>(i)];
        double slack = problem.c[static_cast<std::size_t>(j)] - aty;
        if (problem.nonneg[static_cast<std::size_t>(j)])
            dres = std::max(dres, -slack);
        else
            dres = std::max(dres, std::abs(slack));
    }
    sol.dual_feasibility_residual = std::max(0.0, dres);

    if (ok) sol.status = Status::optimal;
    return sol;
}

}  // namespace projconst::lp
