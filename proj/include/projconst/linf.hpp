#pragma once

#include <optional>

#include "projconst/linalg.hpp"
#include "projconst/mat.hpp"

// Subspaces of l_inf^d and their duals in l_1^d: operator norms, annihilator
// duality, oblique projections, and the relative projection constant
// lambda(V) = min ||P|| over projections P of l_inf^d onto V, solved as an
// embedded linear program.
namespace projconst::linf {

class SubspaceLinf {
  public:
    explicit SubspaceLinf(Mat basis, double rank_tol = tol::rank);

    int ambient_dim() const { return basis_.rows(); }
    int dim() const { return basis_.cols(); }
    const Mat& basis() const { return basis_; }

  private:
    Mat basis_;
};

// Operator norm on l_inf^d: maximum absolute row sum.
double op_norm_inf(const Mat& m);
// Operator norm on l_1^d: maximum absolute column sum.
double op_norm_one(const Mat& m);

// Orthonormal basis of {l : l^T B = 0}, the functionals vanishing on V.
SubspaceLinf annihilator(const SubspaceLinf& v);

struct ProjectionMatrix {
    Mat p;            // d x d, P^2 = P
    Mat range_basis;  // d x n spanning range(P)
};

struct DirectSumInfo {
    double smallest_singular_value = 0.0;
    double largest_singular_value = 0.0;
    bool conditioning_warning = false;
};

// The projection with range V and kernel U; V and U must be algebraic
// complements. Ill-conditioned (but valid) complements set the warning
// instead of failing.
ProjectionMatrix projection_onto_along(const SubspaceLinf& v, const SubspaceLinf& u,
                                       DirectSumInfo* info = nullptr);

struct DualityReport {
    int dim_v = 0, dim_u = 0, dim_v0 = 0, dim_u0 = 0;
    bool dims_match = false;              // dim(U^0) = dim(V) and dim(V^0) = dim(U)
    double dual_split_residual = 0.0;     // V^0 + U^0 spans the dual, V^0 cap U^0 = 0
    double double_ann_residual_v = 0.0;   // (V^0)_0 = V, both containments
    double double_ann_residual_u = 0.0;   // (U^0)_0 = U
    double adjoint_range_residual = 0.0;  // range(P^T) = U^0
    double adjoint_kernel_residual = 0.0;  // P^T vanishes on V^0
    double norm_inf_p = 0.0;               // ||P||_{inf->inf}
    double norm_one_pt = 0.0;              // ||P^T||_{1->1}
    bool norms_equal_exactly = false;      // identical floating-point values
    bool conditioning_warning = false;
    double smallest_singular_value = 0.0;

    bool passed(double residual_tol = tol::resid) const;
};

// Finite-dimensional verification of annihilator duality for a complemented
// pair: dimensions, dual splitting, double annihilators, and the fact that
// the adjoint projection realizes the same operator norm on the dual side.
DualityReport duality_check(const SubspaceLinf& v, const SubspaceLinf& u);

enum class LpStatus { optimal, iteration_limit };

struct SolverOpts {
    long iteration_cap_per_var = 50;
};

struct LambdaResult {
    double value = 0.0;
    ProjectionMatrix optimal_p;
    LpStatus lp_status = LpStatus::optimal;
    double dual_bound = 0.0;
};

// lambda(V, l_inf^d): minimize t over A (d x n), T (d x d) subject to
//   A^T B = I, -T <= B A^T <= T, sum_j T_ij <= t,
// so t is the max absolute row sum of the projection P = B A^T.
LambdaResult relative_projection_constant(const SubspaceLinf& v, const SolverOpts& opts = {});

struct BidualReductionReport {
    int dim_f = 0;
    int dim_v = 0;
    double subspace_residual = 0.0;  // V := (F^0)_0 vs F, mutual containment
    LambdaResult lambda;             // computed once; V and F are the same subspace
    bool passed(double residual_tol = tol::rank) const;
};

// Applies the annihilator twice and confirms the subspace returns to itself,
// so both copies share one projection constant. In a finite-dimensional
// ambient space every subspace is closed in every relevant topology, which
// is what makes this an identity rather than an inequality.
BidualReductionReport double_annihilator_reduction(const SubspaceLinf& f);

}  // namespace projconst::linf
