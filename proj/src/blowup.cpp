#include "projconst/blowup.hpp"

#include <cmath>
#include <limits>

namespace projconst::blowup {

BlowupSpec::BlowupSpec(std::vector<int> multiplicities) : p_(std::move(multiplicities)), d_(0) {
    if (p_.empty()) throw ArgumentError("BlowupSpec: empty multiplicity list");
    for (int v : p_) {
        if (v < 1) throw ArgumentError("BlowupSpec: multiplicities must be >= 1");
        d_ += v;
    }
}

std::vector<double> BlowupSpec::weights() const {
    std::vector<double> q;
    q.reserve(p_.size());
    for (int v : p_) q.push_back(static_cast<double>(v) / d_);
    return q;
}

std::pair<int, int> BlowupSpec::block(int i) const {
    int begin = 0;
    for (int k = 0; k < i; ++k) begin += p_[static_cast<std::size_t>(k)];
    return {begin, begin + p_[static_cast<std::size_t>(i)]};
}

SignMatrix blow_up(const SignMatrix& s0, const BlowupSpec& spec) {
    if (s0.dim() != spec.m())
        throw ArgumentError("blow_up: sign matrix dim " + std::to_string(s0.dim()) +
                            " != multiplicity count " + std::to_string(spec.m()));
    SignMatrix s(spec.total_dim());
    for (int bi = 0; bi < spec.m(); ++bi) {
        auto [ri, re] = spec.block(bi);
        for (int bj = 0; bj < spec.m(); ++bj) {
            auto [ci, ce] = spec.block(bj);
            for (int r = ri; r < re; ++r)
                for (int c = ci; c < ce; ++c)
                    if (r < c) s.set(r, c, s0(bi, bj));
        }
    }
    return s;
}

TopProjector top_projector(const SymMatrix& s, int n, double gap_tol) {
    const int d = s.dim();
    if (n < 1 || n > d) throw ArgumentError("top_projector: n out of range");
    Spectrum sp = eig_sym(s);
    double gap = n < d ? sp.eigenvalues[static_cast<std::size_t>(n - 1)] -
                             sp.eigenvalues[static_cast<std::size_t>(n)]
                       : std::numeric_limits<double>::infinity();
    if (!(gap > gap_tol))
        throw NumericalError("top_projector: degenerate top eigenspace, gap " +
                                 std::to_string(gap) + " <= " + std::to_string(gap_tol),
                             gap);
    TopProjector out;
    out.gap = gap;
    out.u = Mat(d, n);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < n; ++j) out.u(i, j) = sp.eigenvectors(i, j);
    out.p = out.u * out.u.transposed();
    return out;
}

Compressed compress(const Mat& u, const BlowupSpec& spec, double row_tol) {
    const int n = u.cols();
    if (u.rows() != spec.total_dim())
        throw ArgumentError("compress: row count does not match the blow-up dimension");
    Compressed out;
    out.v = Mat(spec.m(), n);
    for (int b = 0; b < spec.m(); ++b) {
        auto [begin, end] = spec.block(b);
        for (int r = begin + 1; r < end; ++r)
            for (int j = 0; j < n; ++j)
                if (std::abs(u(r, j) - u(begin, j)) > row_tol)
                    throw NumericalError(
                        "compress: rows differ within block " + std::to_string(b) +
                            " (the frame was not computed from a genuine blow-up, e.g. a "
                            "degenerate eigenspace mixed the blocks)",
                        std::abs(u(r, j) - u(begin, j)));
        double scale = std::sqrt(static_cast<double>(spec.multiplicities()[static_cast<std::size_t>(b)]));
        for (int j = 0; j < n; ++j) out.v(b, j) = scale * u(begin, j);
    }
    out.q = out.v * out.v.transposed();
    return out;
}

bool RemarkReport::identities_hold(double t) const {
    return trace_id.within(t) && commute.within(t) && vtv.within(t) && q_trace_id.within(t) &&
           rho_eq.within(t) && abs_sum_id.within(t) && sgn_match.holds() && sgn_q.holds();
}

namespace {

Mat scaled_by_roots(const SymMatrix& a, const std::vector<double>& diag) {
    const int d = a.dim();
    Mat m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m(i, j) = std::sqrt(diag[static_cast<std::size_t>(i)]) * a(i, j) *
                      std::sqrt(diag[static_cast<std::size_t>(j)]);
    return m;
}

std::string positions_to_string(const std::vector<std::pair<int, int>>& pos) {
    std::string s;
    for (auto [i, j] : pos) s += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
    return s;
}

}  // namespace

RemarkReport verify_remark(const SignMatrix& s0, const BlowupSpec& spec, int n,
                           bool s0_is_maximizer, const std::optional<SymMatrix>& p0) {
    RemarkReport rep;
    rep.n = n;
    rep.d = spec.total_dim();
    rep.s0_was_declared_maximizer = s0_is_maximizer;
    const double d = static_cast<double>(spec.total_dim());
    const std::vector<double> q = spec.weights();

    SignMatrix s = blow_up(s0, spec);
    SymMatrix s_sym = s.to_sym();
    Spectrum sp = eig_sym(s_sym);
    double pi_n_s = 0.0;
    for (int i = 0; i < n; ++i) pi_n_s += sp.eigenvalues[static_cast<std::size_t>(i)];

    rep.gap.tol = tol::gap;
    if (n < rep.d) {
        rep.gap.value = sp.eigenvalues[static_cast<std::size_t>(n - 1)] -
                        sp.eigenvalues[static_cast<std::size_t>(n)];
    } else {
        rep.gap.skipped_reason = "n equals the blow-up dimension, the projector is the identity";
    }

    bool have_projector = false;
    Mat p_mat;
    Mat u_mat;
    if (n == rep.d) {
        p_mat = Mat::identity(rep.d);
        u_mat = Mat::identity(rep.d);
        have_projector = true;
    } else if (*rep.gap.value > tol::gap) {
        TopProjector top = top_projector(s_sym, n);
        p_mat = std::move(top.p);
        u_mat = std::move(top.u);
        have_projector = true;
    }

    const std::string no_projector_reason =
        "degenerate top eigenspace: the projector is basis-dependent";

    auto skip = [&](ReportEntry& e, const std::string& reason) { e.skipped_reason = reason; };

    rep.trace_id.tol = rep.commute.tol = rep.vtv.tol = rep.q_trace_id.tol = rep.rho_eq.tol =
        rep.abs_sum_id.tol = 1e-8;

    if (!have_projector) {
        skip(rep.trace_id, no_projector_reason);
        skip(rep.commute, no_projector_reason);
        rep.sgn_match.skipped_reason = no_projector_reason;
        skip(rep.vtv, no_projector_reason);
        skip(rep.q_trace_id, no_projector_reason);
        rep.sgn_q.skipped_reason = no_projector_reason;
        skip(rep.rho_eq, no_projector_reason);
        skip(rep.abs_sum_id, no_projector_reason);
        skip(rep.final_ineq_slack, no_projector_reason);
        return rep;
    }

    // pi_n(S) = Tr(S P) and commutation.
    double trace_sp = 0.0;
    Mat sp_prod = s_sym.mat() * p_mat;
    for (int i = 0; i < rep.d; ++i) trace_sp += sp_prod(i, i);
    rep.trace_id.value = pi_n_s - trace_sp;
    rep.commute.value = (sp_prod - p_mat * s_sym.mat()).max_abs();

    // Sgn(P) = S.
    SymMatrix p_sym(p_mat, 1e-9);
    try {
        SignMatrix sgn_p = sgn_entrywise(p_sym, 1e-10);
        bool match = sgn_p == s;
        rep.sgn_match.value = match;
        if (!match) {
            std::vector<std::pair<int, int>> bad;
            for (int i = 0; i < rep.d; ++i)
                for (int j = i; j < rep.d; ++j)
                    if (sgn_p(i, j) != s(i, j)) bad.emplace_back(i, j);
            rep.sgn_match.detail = "mismatch at" + positions_to_string(bad);
        }
    } catch (const AmbiguousSignError& e) {
        rep.sgn_match.skipped_reason = "vanishing entries of P:" + positions_to_string(e.positions);
    }

    // Compression to Q = V V^T.
    bool have_q = false;
    Mat q_mat;
    try {
        Compressed comp = compress(u_mat, spec);
        q_mat = std::move(comp.q);
        have_q = true;
        rep.vtv.value = (comp.v.transposed() * comp.v - Mat::identity(n)).max_abs();
    } catch (const NumericalError& e) {
        skip(rep.vtv, e.what());
        skip(rep.q_trace_id, e.what());
        rep.sgn_q.skipped_reason = e.what();
        skip(rep.rho_eq, e.what());
    }

    if (have_q) {
        // Tr(L S0 L Q) = pi_n(L S0 L) with L = sqrt(Lambda).
        Mat small = scaled_by_roots(s0.to_sym(), q);
        double pi_small = pi_n(SymMatrix(small, 1e-9), n);
        Mat prod = small * q_mat;
        double tr = 0.0;
        for (int i = 0; i < spec.m(); ++i) tr += prod(i, i);
        rep.q_trace_id.value = tr - pi_small;

        try {
            SignMatrix sgn_q = sgn_entrywise(SymMatrix(q_mat, 1e-9), 1e-10);
            bool match = sgn_q == s0;
            rep.sgn_q.value = match;
            if (!match) {
                std::vector<std::pair<int, int>> bad;
                for (int i = 0; i < spec.m(); ++i)
                    for (int j = i; j < spec.m(); ++j)
                        if (sgn_q(i, j) != s0(i, j)) bad.emplace_back(i, j);
                rep.sgn_q.detail = "mismatch at" + positions_to_string(bad);
            }
        } catch (const AmbiguousSignError& e) {
            rep.sgn_q.skipped_reason =
                "vanishing entries of Q:" + positions_to_string(e.positions);
        }

        rep.rho_eq.value = perron_radius(abs_entrywise(SymMatrix(q_mat, 1e-9))) -
                           perron_radius(abs_entrywise(p_sym));
    }

    // j^T |P| j = pi_n(S).
    double abs_sum = 0.0;
    for (int i = 0; i < rep.d; ++i)
        for (int j = 0; j < rep.d; ++j) abs_sum += std::abs(p_mat(i, j));
    rep.abs_sum_id.value = abs_sum - pi_n_s;

    // Closing inequality against the reference projection P0.
    rep.final_ineq_slack.tol = 1e-8;
    if (p0) {
        if (p0->dim() != spec.m()) {
            skip(rep.final_ineq_slack, "reference projection has dimension " +
                                           std::to_string(p0->dim()) + ", expected " +
                                           std::to_string(spec.m()));
        } else {
            SymMatrix abs_p0 = abs_entrywise(*p0);
            double rho_p0 = perron_radius(abs_p0);
            double quad = 0.0;
            for (int i = 0; i < spec.m(); ++i)
                for (int j = 0; j < spec.m(); ++j)
                    quad += std::sqrt(q[static_cast<std::size_t>(i)]) * abs_p0(i, j) *
                            std::sqrt(q[static_cast<std::size_t>(j)]);
            double rho_p = perron_radius(abs_entrywise(p_sym));
            rep.final_ineq_slack.value = d * (rho_p0 - quad) - (d * rho_p - abs_sum);
        }
    } else {
        skip(rep.final_ineq_slack, "no reference projection supplied");
    }
    return rep;
}

}  // namespace projconst::blowup
