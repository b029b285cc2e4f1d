#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "projconst/blowup.hpp"
#include "projconst/signsearch.hpp"

using namespace projconst;
using namespace projconst::blowup;

namespace {

SignMatrix sign2_minus() {
    SignMatrix s(2);
    s.set(0, 1, -1);
    return s;
}

}  // namespace

TEST_CASE("blow_up: constant-block expansion") {
    // 1x1 seed with multiplicity 3: the all-plus matrix.
    SignMatrix all3 = blow_up(SignMatrix(1), BlowupSpec({3}));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(all3(i, j) == 1);

    // Unit multiplicities reproduce the seed.
    CHECK(blow_up(oracles::s_star(), BlowupSpec({1, 1, 1})) == oracles::s_star());

    // Direct block-expansion oracle for p = (2, 1).
    SignMatrix s = blow_up(sign2_minus(), BlowupSpec({2, 1}));
    int expect[3][3] = {{1, 1, -1}, {1, 1, -1}, {-1, -1, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(s(i, j) == expect[i][j]);

    CHECK_THROWS_AS(blow_up(oracles::s_star(), BlowupSpec({1, 1})), ArgumentError);
    CHECK_THROWS_AS(BlowupSpec({1, 0, 2}), ArgumentError);
}

TEST_CASE("top_projector: frozen projectors and the degenerate gap error") {
    // The rank-2 projector of the one-off-sign matrix, against the direct
    // rank-1 complement computation.
    TopProjector top = top_projector(oracles::s_star().to_sym(), 2);
    CHECK((top.p - oracles::s_star_projector()).max_abs() <= 1e-12);
    CHECK((top.p * top.p - top.p).max_abs() <= 1e-10);
    double tr = 0.0;
    for (int i = 0; i < 3; ++i) tr += top.p(i, i);
    CHECK(std::abs(tr - 2.0) <= 1e-10);
    Mat s_mat = oracles::s_star().to_mat();
    CHECK((s_mat * top.p - top.p * s_mat).max_abs() <= 1e-9);

    // Rank-one Perron case: the all-plus matrix.
    TopProjector one = top_projector(SymMatrix(Mat(3, 3, 1.0)), 1);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(one.p(i, j) == doctest::Approx(1.0 / 3).epsilon(1e-12));

    // lambda_1 = lambda_2 = 2: no rank-1 projector.
    CHECK_THROWS_AS(top_projector(oracles::s_star().to_sym(), 1), NumericalError);
    try {
        top_projector(oracles::s_star().to_sym(), 1);
    } catch (const NumericalError& e) {
        CHECK(std::abs(e.residual) <= 1e-10);  // the reported gap
    }
}

TEST_CASE("compress: row repetition and the isometry of V") {
    // Unit multiplicities: V = U.
    TopProjector top = top_projector(oracles::s_star().to_sym(), 2);
    Compressed c = compress(top.u, BlowupSpec({1, 1, 1}));
    CHECK((c.v - top.u).max_abs() == 0.0);

    // Rank-one: U is the constant 1/2 column, V = [1].
    SignMatrix all4 = blow_up(SignMatrix(1), BlowupSpec({4}));
    TopProjector t4 = top_projector(all4.to_sym(), 1);
    for (int i = 0; i < 4; ++i) CHECK(t4.u(i, 0) == doctest::Approx(0.5).epsilon(1e-12));
    Compressed c4 = compress(t4.u, BlowupSpec({4}));
    REQUIRE(c4.v.rows() == 1);
    CHECK(c4.v(0, 0) == doctest::Approx(1.0).epsilon(1e-12));

    // p = (2,2,2): V^T V = I within 1e-9.
    SignMatrix s222 = blow_up(oracles::s_star(), BlowupSpec({2, 2, 2}));
    TopProjector t222 = top_projector(s222.to_sym(), 2);
    Compressed c222 = compress(t222.u, BlowupSpec({2, 2, 2}));
    CHECK((c222.v.transposed() * c222.v - Mat::identity(2)).max_abs() <= 1e-9);

    // A frame that does not repeat rows within blocks is rejected.
    CHECK_THROWS_AS(compress(Mat::identity(4), BlowupSpec({2, 2})), NumericalError);
}

TEST_CASE("blow-up spectrum equals the weighted compression spectrum") {
    Rng rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        int m = 2 + trial % 3;
        SignMatrix s0(m);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) s0.set(i, j, rng.uniform() < 0.5 ? -1 : 1);
        std::vector<int> p(static_cast<std::size_t>(m));
        for (int& v : p) v = rng.uniform_int(1, 3);
        BlowupSpec spec(p);

        SignMatrix s = blow_up(s0, spec);
        Spectrum big = eig_sym(s.to_sym());

        Mat small(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                small(i, j) = std::sqrt(static_cast<double>(p[static_cast<std::size_t>(i)])) *
                              s0(i, j) *
                              std::sqrt(static_cast<double>(p[static_cast<std::size_t>(j)]));
        Spectrum comp = eig_sym(SymMatrix(small, 1e-9));

        // Nonzero eigenvalues coincide; the blow-up pads with zeros.
        std::vector<double> nonzero_big;
        for (double ev : big.eigenvalues)
            if (std::abs(ev) > 1e-9) nonzero_big.push_back(ev);
        std::vector<double> nonzero_small;
        for (double ev : comp.eigenvalues)
            if (std::abs(ev) > 1e-9) nonzero_small.push_back(ev);
        REQUIRE(nonzero_big.size() == nonzero_small.size());
        for (std::size_t i = 0; i < nonzero_big.size(); ++i)
            CHECK(std::abs(nonzero_big[i] - nonzero_small[i]) <= 1e-9);

        // pi_n scaling: pi_n(S) = d * pi_n(sqrt(L) S0 sqrt(L)).
        const int d = spec.total_dim();
        for (int n = 1; n <= std::min(2, m); ++n) {
            double lhs = pi_n(s.to_sym(), n);
            double rhs = d * pi_n_diag_product(s0.to_sym(), spec.weights(), n);
            if (big.eigenvalues[static_cast<std::size_t>(n - 1)] >= -1e-12)
                CHECK(std::abs(lhs - rhs) <= 1e-8);
        }
    }
}

TEST_CASE("spectral quantities are invariant under permuting the blow-up partition") {
    Rng rng(43);
    SignMatrix s = blow_up(oracles::s_star(), BlowupSpec({2, 1, 2}));
    SymMatrix sym = s.to_sym();
    double pi2 = pi_n(sym, 2);
    TopProjector top = top_projector(sym, 2);
    double rho = perron_radius(abs_entrywise(SymMatrix(top.p, 1e-9)));

    for (int trial = 0; trial < 10; ++trial) {
        signsearch::SignedPerm q = signsearch::SignedPerm::identity(5);
        for (int i = 4; i > 0; --i)
            std::swap(q.perm[static_cast<std::size_t>(i)],
                      q.perm[static_cast<std::size_t>(rng.uniform_int(0, i))]);
        SymMatrix conj(signsearch::conjugate(s.to_mat(), q), 1e-12);
        CHECK(std::abs(pi_n(conj, 2) - pi2) <= 1e-9);
        TopProjector tc = top_projector(conj, 2);
        CHECK(std::abs(perron_radius(abs_entrywise(SymMatrix(tc.p, 1e-9))) - rho) <= 1e-9);
    }
}

TEST_CASE("verify_remark: identity chain for maximizing seeds") {
    // Unit multiplicities on the known maximizer: every residual vanishes.
    RemarkReport r = verify_remark(oracles::s_star(), BlowupSpec({1, 1, 1}), 2, true,
                                   SymMatrix(oracles::s_star_projector(), 1e-12));
    CHECK(r.identities_hold(1e-8));
    CHECK(std::abs(*r.trace_id.value) <= 1e-12);
    CHECK(std::abs(*r.abs_sum_id.value) <= 1e-12);  // pi_2 = 4 = j^T |P| j
    CHECK(std::abs(*r.rho_eq.value) <= 1e-12);
    REQUIRE(r.final_ineq_slack.applicable());
    CHECK(*r.final_ineq_slack.value >= -1e-8);

    // Rank-one seed: everything collapses to the all-plus matrix.
    for (std::vector<int> p : {std::vector<int>{2}, std::vector<int>{5}}) {
        RemarkReport r1 = verify_remark(SignMatrix(1), BlowupSpec(p), 1, true);
        CHECK(r1.identities_hold(1e-8));
        CHECK(std::abs(*r1.trace_id.value) <= 1e-10);
        CHECK(std::abs(*r1.q_trace_id.value) <= 1e-10);
    }

    // The displayed intermediate equality
    // d rho(|P|) - j^T|P|j = d rho(|Q|) - pi_n(S) is rho_eq + abs_sum_id.
    SignMatrix s112 = blow_up(oracles::s_star(), BlowupSpec({1, 1, 2}));
    (void)s112;
    for (std::vector<int> p : {std::vector<int>{1, 1, 1}, std::vector<int>{1, 1, 2},
                               std::vector<int>{2, 2, 2}}) {
        BlowupSpec spec(p);
        signsearch::SignMaxResult mx =
            signsearch::maximize_over_sign_matrices(spec.weights(), 2);
        RemarkReport rr = verify_remark(mx.maximizer, spec, 2, true,
                                        SymMatrix(oracles::s_star_projector(), 1e-12));
        CHECK(rr.identities_hold(1e-8));
        REQUIRE(rr.final_ineq_slack.applicable());
        CHECK(*rr.final_ineq_slack.value >= -1e-8);
    }
}

TEST_CASE("verify_remark: non-maximizing seeds degrade into reported reasons, not throws") {
    // The all-plus 3x3 seed with n = 2 has lambda_2 = lambda_3 = 0.
    RemarkReport r = verify_remark(SignMatrix(3), BlowupSpec({1, 1, 1}), 2, false);
    CHECK_FALSE(r.identities_hold(1e-8));
    CHECK(r.gap.applicable());
    CHECK(*r.gap.value <= 1e-10);
    CHECK_FALSE(r.trace_id.applicable());
    CHECK_FALSE(r.sgn_match.value.has_value());
    CHECK(r.sgn_match.skipped_reason.find("degenerate") != std::string::npos);
    CHECK_FALSE(r.final_ineq_slack.applicable());
}
