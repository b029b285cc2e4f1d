#pragma once

#include <vector>

namespace projconst::lp {

enum class Status { optimal, infeasible, unbounded, iteration_limit };

// minimize c^T x
//   subject to  eq_lhs x == eq_rhs
//               ineq_lhs x <= ineq_rhs
//               x_j >= 0 where nonneg[j], x_j free otherwise
struct Problem {
    int num_vars = 0;
    std::vector<double> c;
    std::vector<std::vector<double>> eq_lhs;
    std::vector<double> eq_rhs;
    std::vector<std::vector<double>> ineq_lhs;
    std::vector<double> ineq_rhs;
    std::vector<bool> nonneg;
};

struct Solution {
    Status status = Status::iteration_limit;
    double objective = 0.0;
    std::vector<double> x;
    // Multipliers for the original rows (equalities then inequalities) and
    // the certified bound y^T b they induce. For a minimization this is a
    // lower bound whenever dual_feasibility_residual is small.
    std::vector<double> dual_eq;
    std::vector<double> dual_ineq;
    double dual_objective = 0.0;
    double dual_feasibility_residual = 0.0;
    long iterations = 0;
};

// Dense two-phase primal simplex. Pivoting follows Bland's rule (smallest
// eligible index), which cannot cycle; the iteration cap is a safety net
// only. Sized for desk-scale problems (a few hundred variables).
Solution solve(const Problem& problem, long iteration_cap_per_var = 50);

}  // namespace projconst::lp
