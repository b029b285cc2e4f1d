#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "projconst/mat.hpp"

namespace projconst {

// Symmetric matrix with entries in {-1,+1} and unit diagonal.
class SignMatrix {
  public:
    explicit SignMatrix(int dim);
    explicit SignMatrix(const Mat& m);

    int dim() const { return dim_; }
    int operator()(int i, int j) const { return s_[static_cast<std::size_t>(i) * dim_ + j]; }

    // Sets the (i,j) and (j,i) entries; i != j, value +-1.
    void set(int i, int j, int value);

    Mat to_mat() const;
    SymMatrix to_sym() const;

    // Strict upper triangle in row-major order; the comparison key for
    // canonical forms (-1 sorts before +1).
    std::vector<std::int8_t> upper_triangle() const;

    friend bool operator==(const SignMatrix& a, const SignMatrix& b) {
        return a.dim_ == b.dim_ && a.s_ == b.s_;
    }
    friend bool operator<(const SignMatrix& a, const SignMatrix& b) {
        if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
        return a.upper_triangle() < b.upper_triangle();
    }

  private:
    int dim_;
    std::vector<std::int8_t> s_;
};

struct Spectrum {
    std::vector<double> eigenvalues;  // nonincreasing
    Mat eigenvectors;                 // orthonormal columns, column i pairs with eigenvalues[i]
};

struct EigOpts {
    double ortho_tol = tol::ortho;
    double resid_tol = tol::resid;
    int max_sweeps = 64;
};

// Eigendecomposition by cyclic Jacobi rotations. Deterministic: fixed sweep
// order, eigenvalues sorted descending with stable ties, and each
// eigenvector oriented so its first nonnegligible component is positive.
Spectrum eig_sym(const SymMatrix& A, const EigOpts& opts = {});

// Sum of the n largest eigenvalues.
double pi_n(const SymMatrix& A, int n);

// Sum of the n largest eigenvalues of A*diag(D), evaluated through the
// symmetric conjugate sqrt(D) A sqrt(D). The two share nonzero spectrum:
// XY and YX have the same characteristic polynomial for square X, Y.
double pi_n_diag_product(const SymMatrix& A, const std::vector<double>& diag, int n);

SymMatrix abs_entrywise(const SymMatrix& A);

// Entrywise sign. Any entry with |a_ij| <= zero_tol is an error: sign is
// only meaningful for matrices with nonvanishing entries.
SignMatrix sgn_entrywise(const SymMatrix& A, double zero_tol);

// Largest eigenvalue of an entrywise-nonnegative symmetric matrix (equals
// its spectral radius).
double perron_radius(const SymMatrix& M);

struct VnCertificate {
    double lhs;    // Tr(AB)
    double bound;  // sum_i lambda_i(A) lambda_i(B), both sorted descending
    bool equality;
    // Present iff equality: orthonormal basis diagonalizing both A and B
    // with the eigenvalue pairing that attains the bound.
    std::optional<Mat> shared_basis;
    std::vector<double> a_eigenvalues;
    std::vector<double> b_eigenvalues;
    // B's eigenvalues in shared-basis column order (the pairing that attains
    // the bound); only meaningful when shared_basis is present.
    std::vector<double> paired_b_eigenvalues;
    double certificate_residual = 0.0;
};

// Checks Tr(AB) <= sum_i lambda_i(A) lambda_i(B) and, at equality, builds
// the simultaneous eigenbasis certificate.
VnCertificate vn_trace_check(const SymMatrix& A, const SymMatrix& B, double eq_tol = tol::eq);

}  // namespace projconst
