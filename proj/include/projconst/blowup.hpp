#pragma once

#include <optional>
#include <string>
#include <vector>

#include "projconst/matcore.hpp"

// Constant-block expansion of sign matrices and the verification pipeline
// around it: the top-n spectral projector P = U U^T of the blown-up matrix,
// its compression Q = V V^T back to the small dimension, the identity chain
// linking pi_n, traces, entrywise signs and Perron radii, and the closing
// inequality against a reference projection.
namespace projconst::blowup {

class BlowupSpec {
  public:
    explicit BlowupSpec(std::vector<int> multiplicities);

    int m() const { return static_cast<int>(p_.size()); }
    int total_dim() const { return d_; }
    const std::vector<int>& multiplicities() const { return p_; }
    // q_i = p_i / d, the unit-trace diagonal weights.
    std::vector<double> weights() const;
    // Half-open index range [begin, end) of block i in the expanded matrix.
    std::pair<int, int> block(int i) const;

  private:
    std::vector<int> p_;
    int d_;
};

// d x d sign matrix whose (i, j) block of shape p_i x p_j is constantly
// (S0)_ij; blocks are contiguous in index order.
SignMatrix blow_up(const SignMatrix& s0, const BlowupSpec& spec);

struct TopProjector {
    Mat u;       // d x n, orthonormal columns spanning the top-n eigenspace
    Mat p;       // U U^T
    double gap;  // lambda_n - lambda_{n+1}
};

// Fails with a "degenerate top eigenspace" error when the spectral gap at n
// is below gap_tol; the projector would be basis-dependent there.
TopProjector top_projector(const SymMatrix& s, int n, double gap_tol = tol::gap);

struct Compressed {
    Mat v;  // m x n with rows sqrt(p_i) w_i
    Mat q;  // V V^T
};

// Collapses the repeated rows of U (one value w_i per block, checked within
// row_tol) into V with rows sqrt(p_i) w_i.
Compressed compress(const Mat& u, const BlowupSpec& spec, double row_tol = tol::resid);

// One verification quantity; either a value or an explicit reason why it
// could not be evaluated.
struct ReportEntry {
    std::optional<double> value;
    std::string skipped_reason;
    double tol = 0.0;

    bool applicable() const { return value.has_value(); }
    bool within(double t) const { return value && std::abs(*value) <= t; }
};

struct BoolEntry {
    std::optional<bool> value;
    std::string skipped_reason;
    std::string detail;  // offending entries etc.

    bool holds() const { return value && *value; }
};

struct RemarkReport {
    int n = 0;
    int d = 0;
    ReportEntry gap;          // lambda_n - lambda_{n+1} of the blow-up
    ReportEntry trace_id;     // pi_n(S) - Tr(S P)
    ReportEntry commute;      // ||S P - P S||_max
    BoolEntry sgn_match;      // Sgn(P) == S
    ReportEntry vtv;          // ||V^T V - I||_max
    ReportEntry q_trace_id;   // Tr(L' S0 L' Q) - pi_n(L' S0 L'), L' = sqrt(Lambda)
    BoolEntry sgn_q;          // Sgn(Q) == S0
    ReportEntry rho_eq;       // rho(|Q|) - rho(|P|)
    ReportEntry abs_sum_id;   // j^T |P| j - pi_n(S)
    ReportEntry final_ineq_slack;  // d(rho(|P0|) - sqrt(q)^T |P0| sqrt(q)) - (d rho(|P|) - j^T |P| j)
    bool s0_was_declared_maximizer = false;

    // All identity residuals evaluated and within tol, both sign matches
    // confirmed. The closing inequality is judged by its own slack field.
    bool identities_hold(double t = 1e-8) const;
};

// Runs the full pipeline. Degenerate eigenspaces and ambiguous signs become
// skipped entries with reasons, never exceptions: when S0 is not maximal
// for the weights the identities are expected to fail and the report simply
// records how.
RemarkReport verify_remark(const SignMatrix& s0, const BlowupSpec& spec, int n,
                           bool s0_is_maximizer,
                           const std::optional<SymMatrix>& p0 = std::nullopt);

}  // namespace projconst::blowup
