#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "projconst/matcore.hpp"
#include "projconst/rational.hpp"

// Search machinery over sign matrices: orbit enumeration under signed
// permutations, maximization of D -> pi_n(sqrt(D) S sqrt(D)) over the
// diagonal simplex and its eps-restriction, stabilizer groups with exact
// averaging, and a Stiefel ascent producing lower bounds for the maximal
// Perron radius over rank-n projections.
namespace projconst::signsearch {

// Nonnegative diagonal with unit trace; entries bounded below by eps.
class SimplexDiag {
  public:
    explicit SimplexDiag(std::vector<double> diag, double eps = 0.0);

    int dim() const { return static_cast<int>(diag_.size()); }
    double eps() const { return eps_; }
    const std::vector<double>& diag() const { return diag_; }

    static SimplexDiag uniform(int d, double eps = 0.0);

  private:
    std::vector<double> diag_;
    double eps_;
};

// Q with exactly one +-1 per row and column: Q maps e_i to sign[i] * e_{perm[i]}.
struct SignedPerm {
    std::vector<int> perm;
    std::vector<int> sign;

    static SignedPerm identity(int d);
    SignedPerm inverse() const;
    SignedPerm composed_with(const SignedPerm& inner) const;  // this after inner
    Mat to_mat() const;

    friend bool operator==(const SignedPerm& a, const SignedPerm& b) {
        return a.perm == b.perm && a.sign == b.sign;
    }
    friend bool operator<(const SignedPerm& a, const SignedPerm& b) {
        if (a.perm != b.perm) return a.perm < b.perm;
        return a.sign < b.sign;
    }
};

// Q A Q^T for symmetric A.
Mat conjugate(const Mat& a, const SignedPerm& q);
SignMatrix conjugate(const SignMatrix& s, const SignedPerm& q);

// Lexicographically smallest strict upper triangle over the orbit of S
// under signed-permutation conjugation (-1 sorts before +1).
SignMatrix canonical_form(const SignMatrix& s);

// One canonical representative per orbit of the m x m sign matrices,
// sorted. Feasible for 2 <= m <= 7.
std::vector<SignMatrix> enumerate_sign_classes(int m);

struct SimplexMaxOpts {
    int restarts = 32;
    std::uint64_t seed = 0;
    double grid = 1.0 / 60.0;  // certificate resolution, used for dim <= 4
    int max_iters = 500;
    double gap_tol = 1e-8;
    double limit_tol = 1e-6;
    // Extra deterministic warm starts (e.g. the previous optimum in an
    // eps-continuation); merged ahead of the seeded restarts.
    std::vector<std::vector<double>> warm_starts;
};

struct GridCertificate {
    double resolution;
    double best_value;
};

struct SimplexMaxResult {
    std::vector<double> best_diag;
    double value = 0.0;
    int restarts_used = 0;
    std::optional<GridCertificate> grid_certificate;
    bool degenerate_gap_seen = false;  // subgradient fallback was taken
};

// Multistart projected-gradient ascent of f(D) = pi_n(sqrt(D) S sqrt(D))
// over {D : sum d_ii = 1, d_ii >= eps}. Deterministic in opts.seed. For
// dim <= 4 the result carries an exhaustive-grid certificate and is
// polished from the grid optimum, so the grid can never beat it by more
// than numerical noise. Global optimality is NOT claimed beyond the grid
// certificate; for dim > 4 the value is a best-found.
SimplexMaxResult maximize_over_simplex(const SignMatrix& s, int n, double eps,
                                       const SimplexMaxOpts& opts = {});

// Analytic gradient of f(D) via the top-n spectral projector. Sets
// *degenerate when the spectral gap at D is below gap_tol (the projector
// then yields a supergradient rather than a gradient).
std::vector<double> simplex_objective_gradient(const SignMatrix& s,
                                               const std::vector<double>& diag, int n,
                                               double gap_tol = 1e-8,
                                               bool* degenerate = nullptr);

struct EpsLimitResult {
    std::vector<double> values;   // one per eps, in input order
    double eps_zero_value = 0.0;  // the unrestricted maximum
    bool nondecreasing = false;   // as eps decreases
    bool limit_reached = false;   // final value within limit_tol of eps = 0
};

// Values of the restricted maxima along a decreasing eps sequence; each run
// is warm-started from the previous optimum so nestedness of the feasible
// sets transfers to the reported values.
EpsLimitResult eps_limit_check(const SignMatrix& s, int n, const std::vector<double>& eps_seq,
                               const SimplexMaxOpts& opts = {});

// All signed permutations Q with ||Q A Q^T - A||_max <= match_tol, by
// exhaustive search (dim <= 7). The result always contains +-I and is
// closed under inversion and composition.
std::vector<SignedPerm> stabilizer(const SymMatrix& a, double match_tol = 1e-10);

// Group average (1/|G|) sum_Q Q D Q^T over exact rationals. The result has
// the same trace, is exactly G-invariant, and its minimum entry does not
// drop below the input minimum.
std::vector<Rational> symmetrize_exact(const std::vector<Rational>& diag,
                                       const std::vector<SignedPerm>& group);
SimplexDiag symmetrize(const SimplexDiag& d, const std::vector<SignedPerm>& group);

// Exhaustive argmax of S -> pi_n(sqrt(L) S sqrt(L)) over all m x m sign
// matrices (2^(m(m-1)/2) candidates; feasible for m <= 6). Ties resolve to
// the lexicographically smallest triangle.
struct SignMaxResult {
    SignMatrix maximizer;
    double value;
};
SignMaxResult maximize_over_sign_matrices(const std::vector<double>& lambda_diag, int n);

struct StiefelSearchResult {
    Mat best_p;      // d x d rank-n orthogonal projection
    double value;    // rho(|P|) at best_p: a LOWER bound for the maximum
    int restarts_used;
};

// Local ascent of U -> rho(|U U^T|) on orthonormal frames by
// finite-difference gradients with re-orthonormalization retraction.
// Reports the best value found; never a claim of global optimality.
StiefelSearchResult stiefel_rho_search(int n, int m, int restarts, std::uint64_t seed);

}  // namespace projconst::signsearch
