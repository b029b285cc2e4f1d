#include "projconst/linf.hpp"

#include <cmath>
#include <string>

#include "projconst/lp.hpp"

namespace projconst::linf {

SubspaceLinf::SubspaceLinf(Mat basis, double rank_tol) : basis_(std::move(basis)) {
    const int d = basis_.rows(), n = basis_.cols();
    if (n < 1 || n > d) throw ArgumentError("SubspaceLinf: need 1 <= dim <= ambient dim");
    SpanSplit split = span_and_complement(basis_, rank_tol);
    if (split.rank != n)
        throw ArgumentError("SubspaceLinf: basis has rank " + std::to_string(split.rank) +
                            ", expected " + std::to_string(n));
}

double op_norm_inf(const Mat& m) {
    double best = 0.0;
    for (int i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < m.cols(); ++j) s += std::abs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

double op_norm_one(const Mat& m) {
    double best = 0.0;
    for (int j = 0; j < m.cols(); ++j) {
        double s = 0.0;
        for (int i = 0; i < m.rows(); ++i) s += std::abs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

SubspaceLinf annihilator(const SubspaceLinf& v) {
    SpanSplit split = span_and_complement(v.basis());
    if (split.complement.cols() == 0)
        throw ArgumentError("annihilator: subspace is the whole space, annihilator is {0}");
    return SubspaceLinf(split.complement);
}

ProjectionMatrix projection_onto_along(const SubspaceLinf& v, const SubspaceLinf& u,
                                       DirectSumInfo* info) {
    const int d = v.ambient_dim();
    if (u.ambient_dim() != d)
        throw ArgumentError("projection_onto_along: ambient dimension mismatch");
    if (v.dim() + u.dim() != d)
        throw ArgumentError("projection_onto_along: dim V + dim U = " +
                            std::to_string(v.dim() + u.dim()) + " != ambient " +
                            std::to_string(d));

    Mat concat(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < v.dim(); ++j) concat(i, j) = v.basis()(i, j);
        for (int j = 0; j < u.dim(); ++j) concat(i, v.dim() + j) = u.basis()(i, j);
    }
    SingularExtent sv = singular_extent(concat);
    bool warn = sv.smallest < 1e-8 * std::max(1.0, sv.largest);
    if (info) {
        info->smallest_singular_value = sv.smallest;
        info->largest_singular_value = sv.largest;
        info->conditioning_warning = warn;
    }
    if (sv.smallest < 1e-10 * std::max(1.0, sv.largest))
        throw NumericalError("projection_onto_along: not a direct sum, smallest singular value " +
                                 std::to_string(sv.smallest),
                             sv.smallest);

    // P = [B_V | 0] [B_V | B_U]^{-1}: coordinates in the split, keep the V part.
    Mat selector(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < v.dim(); ++j) selector(i, j) = v.basis()(i, j);
    Mat inv = solve_linear(concat, Mat::identity(d));
    ProjectionMatrix out{selector * inv, v.basis()};

    double idem = (out.p * out.p - out.p).max_abs();
    if (!warn && idem > 1e-7)
        throw NumericalError("projection_onto_along: idempotency residual too large", idem);
    return out;
}

bool DualityReport::passed(double residual_tol) const {
    return dims_match && dual_split_residual <= residual_tol &&
           double_ann_residual_v <= residual_tol && double_ann_residual_u <= residual_tol &&
           adjoint_range_residual <= residual_tol && adjoint_kernel_residual <= residual_tol &&
           norms_equal_exactly;
}

DualityReport duality_check(const SubspaceLinf& v, const SubspaceLinf& u) {
    const int d = v.ambient_dim();
    DualityReport rep;
    rep.dim_v = v.dim();
    rep.dim_u = u.dim();

    SubspaceLinf v0 = annihilator(v);
    SubspaceLinf u0 = annihilator(u);
    rep.dim_v0 = v0.dim();
    rep.dim_u0 = u0.dim();
    rep.dims_match = (rep.dim_u0 == rep.dim_v) && (rep.dim_v0 == rep.dim_u);

    // The two annihilators must split the dual: V^0 + U^0 reaches every
    // functional, and with dim V^0 + dim U^0 = d that forces a trivial
    // intersection as well.
    Mat concat(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < v0.dim(); ++j) concat(i, j) = v0.basis()(i, j);
        for (int j = 0; j < u0.dim(); ++j) concat(i, v0.dim() + j) = u0.basis()(i, j);
    }
    SpanSplit dual_span = span_and_complement(concat, 1e-6);
    rep.dual_split_residual =
        dual_span.rank == d ? containment_residual(Mat::identity(d), dual_span.span) : 1.0;

    // Double annihilators come back to the original subspaces.
    SubspaceLinf v00 = annihilator(v0);
    SubspaceLinf u00 = annihilator(u0);
    Mat v_ortho = orthonormalize_columns(v.basis());
    Mat u_ortho = orthonormalize_columns(u.basis());
    rep.double_ann_residual_v = std::max(containment_residual(v00.basis(), v_ortho),
                                         containment_residual(v_ortho, v00.basis()));
    rep.double_ann_residual_u = std::max(containment_residual(u00.basis(), u_ortho),
                                         containment_residual(u_ortho, u00.basis()));

    DirectSumInfo info;
    ProjectionMatrix p = projection_onto_along(v, u, &info);
    rep.conditioning_warning = info.conditioning_warning;
    rep.smallest_singular_value = info.smallest_singular_value;

    // The adjoint is the projection onto U^0 along V^0: columns of P^T lie
    // in U^0, U^0 is fixed pointwise, and V^0 is annihilated.
    Mat pt = p.p.transposed();
    Mat u0_ortho = orthonormalize_columns(u0.basis());
    rep.adjoint_range_residual = std::max(containment_residual(pt, u0_ortho),
                                          (pt * u0.basis() - u0.basis()).max_abs());
    rep.adjoint_kernel_residual = (pt * v0.basis()).max_abs();

    rep.norm_inf_p = op_norm_inf(p.p);
    rep.norm_one_pt = op_norm_one(pt);
    rep.norms_equal_exactly = rep.norm_inf_p == rep.norm_one_pt;
    return rep;
}

LambdaResult relative_projection_constant(const SubspaceLinf& v, const SolverOpts& opts) {
    const int d = v.ambient_dim();
    const int n = v.dim();
    const Mat& b = v.basis();

    // Variable layout: A (d*n, free, index k*n+r), T (d*d, nonneg), t (last).
    const int a_vars = d * n;
    const int t_vars = d * d;
    const int num = a_vars + t_vars + 1;
    auto a_idx = [n](int k, int r) { return k * n + r; };
    auto t_idx = [a_vars, d](int i, int j) { return a_vars + i * d + j; };
    const int t_scalar = a_vars + t_vars;

    lp::Problem prob;
    prob.num_vars = num;
    prob.c.assign(static_cast<std::size_t>(num), 0.0);
    prob.c[static_cast<std::size_t>(t_scalar)] = 1.0;
    prob.nonneg.assign(static_cast<std::size_t>(num), true);
    for (int k = 0; k < d; ++k)
        for (int r = 0; r < n; ++r) prob.nonneg[static_cast<std::size_t>(a_idx(k, r))] = false;

    // A^T B = I_n.
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            std::vector<double> row(static_cast<std::size_t>(num), 0.0);
            for (int k = 0; k < d; ++k) row[static_cast<std::size_t>(a_idx(k, r))] = b(k, c);
            prob.eq_lhs.push_back(std::move(row));
            prob.eq_rhs.push_back(r == c ? 1.0 : 0.0);
        }

    // (B A^T)_ij <= T_ij and -(B A^T)_ij <= T_ij.
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            std::vector<double> row(static_cast<std::size_t>(num), 0.0);
            for (int r = 0; r < n; ++r) row[static_cast<std::size_t>(a_idx(j, r))] = b(i, r);
            row[static_cast<std::size_t>(t_idx(i, j))] = -1.0;
            prob.ineq_lhs.push_back(row);
            prob.ineq_rhs.push_back(0.0);
            for (int r = 0; r < n; ++r) row[static_cast<std::size_t>(a_idx(j, r))] = -b(i, r);
            prob.ineq_lhs.push_back(std::move(row));
            prob.ineq_rhs.push_back(0.0);
        }

    // Row sums of T bounded by t.
    for (int i = 0; i < d; ++i) {
        std::vector<double> row(static_cast<std::size_t>(num), 0.0);
        for (int j = 0; j < d; ++j) row[static_cast<std::size_t>(t_idx(i, j))] = 1.0;
        row[static_cast<std::size_t>(t_scalar)] = -1.0;
        prob.ineq_lhs.push_back(std::move(row));
        prob.ineq_rhs.push_back(0.0);
    }

    lp::Solution sol = lp::solve(prob, opts.iteration_cap_per_var);
    if (sol.status == lp::Status::infeasible || sol.status == lp::Status::unbounded)
        throw NumericalError("relative_projection_constant: solver reported an impossible "
                             "status for a feasible bounded program",
                             0.0);

    Mat a_opt(d, n);
    for (int k = 0; k < d; ++k)
        for (int r = 0; r < n; ++r) a_opt(k, r) = sol.x[static_cast<std::size_t>(a_idx(k, r))];

    LambdaResult out;
    out.value = sol.objective;
    out.optimal_p = ProjectionMatrix{b * a_opt.transposed(), b};
    out.lp_status =
        sol.status == lp::Status::optimal ? LpStatus::optimal : LpStatus::iteration_limit;
    out.dual_bound = sol.dual_objective;
    return out;
}

bool BidualReductionReport::passed(double residual_tol) const {
    return dim_f == dim_v && subspace_residual <= residual_tol;
}

BidualReductionReport double_annihilator_reduction(const SubspaceLinf& f) {
    BidualReductionReport rep;
    rep.dim_f = f.dim();
    SubspaceLinf back = annihilator(annihilator(f));
    rep.dim_v = back.dim();
    Mat f_ortho = orthonormalize_columns(f.basis());
    rep.subspace_residual = std::max(containment_residual(back.basis(), f_ortho),
                                     containment_residual(f_ortho, back.basis()));
    rep.lambda = relative_projection_constant(f);
    return rep;
}

}  // namespace projconst::linf
