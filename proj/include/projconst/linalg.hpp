#pragma once

#include "projconst/mat.hpp"

namespace projconst {

// Modified Gram-Schmidt with a second pass; columns must be independent.
Mat orthonormalize_columns(const Mat& m, double tol = 1e-12);

// Solves A X = B by Gaussian elimination with partial pivoting.
Mat solve_linear(Mat a, Mat b);

// Smallest/largest singular value of a (not necessarily square) matrix,
// via the spectrum of M^T M.
struct SingularExtent {
    double smallest;
    double largest;
};
SingularExtent singular_extent(const Mat& m);

// Orthonormal basis of the column span and of the null space of m^T
// (the orthogonal complement of the span), split at the rank tolerance.
struct SpanSplit {
    Mat span;        // d x r
    Mat complement;  // d x (d - r)
    int rank;
};
SpanSplit span_and_complement(const Mat& m, double rank_tol = tol::rank);

// max |entry| of (I - Pi_Y) X where Pi_Y projects onto span(Y_orthonormal);
// zero iff every column of x lies in the span.
double containment_residual(const Mat& x, const Mat& y_orthonormal);

}  // namespace projconst
