#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "projconst/matcore.hpp"

using namespace projconst;

namespace {

SymMatrix sym(std::initializer_list<std::initializer_list<double>> rows) {
    Mat m(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return SymMatrix(std::move(m));
}

}  // namespace

TEST_CASE("eig_sym: identity, diagonal and the one-off-sign matrix") {
    Spectrum id = eig_sym(SymMatrix::identity(3));
    for (double ev : id.eigenvalues) CHECK(ev == doctest::Approx(1.0).epsilon(1e-14));

    Spectrum diag = eig_sym(SymMatrix::diagonal({3.0, 1.0, 2.0}));
    CHECK(diag.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(diag.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(diag.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-14));

    // Independent route: the closed-form roots of the characteristic cubic.
    SymMatrix s = oracles::s_star().to_sym();
    std::vector<double> expect = oracles::eig3_closed_form(s.mat());
    CHECK(expect[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(expect[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(expect[2] == doctest::Approx(-1.0).epsilon(1e-12));

    Spectrum sp = eig_sym(s);
    for (int i = 0; i < 3; ++i)
        CHECK(sp.eigenvalues[static_cast<std::size_t>(i)] ==
              doctest::Approx(expect[static_cast<std::size_t>(i)]).epsilon(1e-12));
}

TEST_CASE("eig_sym: orthonormality, residual, orientation and determinism") {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        int d = 2 + trial % 6;
        SymMatrix a(oracles::random_symmetric(d, rng));
        Spectrum sp = eig_sym(a);

        Mat vtv = sp.eigenvectors.transposed() * sp.eigenvectors;
        CHECK((vtv - Mat::identity(d)).max_abs() <= 1e-10);
        for (int j = 0; j + 1 < d; ++j)
            CHECK(sp.eigenvalues[static_cast<std::size_t>(j)] >=
                  sp.eigenvalues[static_cast<std::size_t>(j + 1)]);

        // Orientation rule: the first non-negligible component is positive.
        for (int j = 0; j < d; ++j) {
            double col_max = 0.0;
            for (int i = 0; i < d; ++i) col_max = std::max(col_max, std::abs(sp.eigenvectors(i, j)));
            for (int i = 0; i < d; ++i) {
                if (std::abs(sp.eigenvectors(i, j)) > 1e-8 * col_max) {
                    CHECK(sp.eigenvectors(i, j) > 0.0);
                    break;
                }
            }
        }

        Spectrum again = eig_sym(a);
        CHECK(again.eigenvalues == sp.eigenvalues);
        CHECK(again.eigenvectors.data() == sp.eigenvectors.data());
    }
}

TEST_CASE("pi_n: frozen examples") {
    SymMatrix s = oracles::s_star().to_sym();
    CHECK(pi_n(s, 2) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(pi_n(SymMatrix::identity(3), 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pi_n(s, 3) == doctest::Approx(3.0).epsilon(1e-12));  // full sum = trace
    CHECK_THROWS_AS(pi_n(s, 0), ArgumentError);
    CHECK_THROWS_AS(pi_n(s, 4), ArgumentError);
}

TEST_CASE("pi_n as max of Tr(AP) over random rank-n projections") {
    Rng rng(11);
    for (int instance = 0; instance < 4; ++instance) {
        SymMatrix a(oracles::random_symmetric(4, rng));
        for (int n = 1; n <= 3; ++n) {
            double bound = pi_n(a, n);
            double best = -1e300;
            for (int sample = 0; sample < 10000; ++sample) {
                Mat u = oracles::random_gaussian(4, n, rng);
                // Gram-Schmidt
                for (int j = 0; j < n; ++j) {
                    for (int k = 0; k < j; ++k) {
                        double dot = 0.0;
                        for (int i = 0; i < 4; ++i) dot += u(i, k) * u(i, j);
                        for (int i = 0; i < 4; ++i) u(i, j) -= dot * u(i, k);
                    }
                    double norm = 0.0;
                    for (int i = 0; i < 4; ++i) norm += u(i, j) * u(i, j);
                    norm = std::sqrt(norm);
                    for (int i = 0; i < 4; ++i) u(i, j) /= norm;
                }
                Mat p = u * u.transposed();
                double tr = 0.0;
                for (int i = 0; i < 4; ++i)
                    for (int k = 0; k < 4; ++k) tr += a(i, k) * p(k, i);
                best = std::max(best, tr);
            }
            // No sample may beat the eigenvalue sum, and good samples come
            // close from below.
            CHECK(best <= bound + 1e-9);
            CHECK(best > bound - 2.0);
        }
    }
}

TEST_CASE("pi_n shift equivariance") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        int d = 2 + trial % 5;
        Mat g = oracles::random_symmetric(d, rng);
        double c = rng.uniform(-3.0, 3.0);
        Mat shifted = g;
        for (int i = 0; i < d; ++i) shifted(i, i) += c;
        for (int n = 1; n <= d; ++n)
            CHECK(std::abs(pi_n(SymMatrix(shifted), n) - (pi_n(SymMatrix(g), n) + c * n)) <=
                  1e-10);
    }
}

TEST_CASE("pi_n_diag_product: frozen examples") {
    SymMatrix s = oracles::s_star().to_sym();
    CHECK(pi_n_diag_product(s, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 2) ==
          doctest::Approx(4.0 / 3).epsilon(1e-12));
    CHECK(pi_n_diag_product(s, {0.0, 0.0, 0.0}, 2) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(pi_n_diag_product(SymMatrix::identity(3), {0.5, 1.0 / 3, 1.0 / 6}, 1) ==
          doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(pi_n_diag_product(s, {1.0, -0.1, 0.1}, 1), ArgumentError);
}

TEST_CASE("pi_n_diag_product agrees with the characteristic-polynomial route for A*diag") {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        int d = 3 + trial % 2;
        Mat a = oracles::random_symmetric(d, rng);
        std::vector<double> diag(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            diag[static_cast<std::size_t>(i)] = rng.uniform(0.0, 2.0);
            if (trial % 3 == 0 && i == 0) diag[0] = 0.0;  // singular cases too
        }
        Mat ad = a;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) ad(i, j) = a(i, j) * diag[static_cast<std::size_t>(j)];
        std::vector<double> roots = oracles::real_roots_descending(oracles::char_poly(ad));
        REQUIRE(static_cast<int>(roots.size()) == d);
        for (int n = 1; n <= d; ++n) {
            double expect = 0.0;
            for (int i = 0; i < n; ++i) expect += roots[static_cast<std::size_t>(i)];
            CHECK(std::abs(pi_n_diag_product(SymMatrix(a), diag, n) - expect) <= 1e-8);
        }
    }
}

TEST_CASE("abs and sgn entrywise") {
    SymMatrix flip = sym({{1, -1}, {-1, 1}});
    SymMatrix a = abs_entrywise(flip);
    CHECK(a(0, 1) == 1.0);
    CHECK(a(0, 0) == 1.0);

    SymMatrix zero = sym({{0, 0}, {0, 0}});
    CHECK(abs_entrywise(zero).mat().max_abs() == 0.0);

    // |P| for the rank-2 projector: entries 1/3 or 2/3, row sums 4/3.
    SymMatrix p(oracles::s_star_projector(), 1e-12);
    SymMatrix ap = abs_entrywise(p);
    for (int i = 0; i < 3; ++i) {
        double row = 0.0;
        for (int j = 0; j < 3; ++j) {
            double v = ap(i, j);
            CHECK((v == doctest::Approx(1.0 / 3).epsilon(1e-12) ||
                   v == doctest::Approx(2.0 / 3).epsilon(1e-12)));
            row += v;
        }
        CHECK(row == doctest::Approx(4.0 / 3).epsilon(1e-12));
    }

    SignMatrix sg = sgn_entrywise(sym({{0.5, -0.2}, {-0.2, 0.9}}), 1e-10);
    CHECK(sg(0, 1) == -1);
    CHECK(sg(0, 0) == 1);

    CHECK(sgn_entrywise(p, 1e-10) == oracles::s_star());

    CHECK_THROWS_AS(sgn_entrywise(SymMatrix::identity(2), 1e-10), AmbiguousSignError);
    try {
        sgn_entrywise(SymMatrix::identity(2), 1e-10);
    } catch (const AmbiguousSignError& e) {
        REQUIRE(e.positions.size() == 1);
        CHECK(e.positions[0] == std::pair<int, int>{0, 1});
    }
}

TEST_CASE("perron radius") {
    Mat ones(3, 3, 1.0);
    CHECK(perron_radius(SymMatrix(ones)) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(perron_radius(abs_entrywise(SymMatrix(oracles::s_star_projector(), 1e-12))) ==
          doctest::Approx(4.0 / 3).epsilon(1e-12));
    CHECK(perron_radius(SymMatrix::diagonal({2.0, 5.0})) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK_THROWS_AS(perron_radius(sym({{1, -0.5}, {-0.5, 1}})), ArgumentError);

    // Bracketed by the extreme row sums.
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        int d = 2 + trial % 5;
        Mat m(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) m(i, j) = m(j, i) = rng.uniform(0.0, 1.0);
        double lo = 1e300, hi = -1e300;
        for (int i = 0; i < d; ++i) {
            double row = 0.0;
            for (int j = 0; j < d; ++j) row += m(i, j);
            lo = std::min(lo, row);
            hi = std::max(hi, row);
        }
        double rho = perron_radius(SymMatrix(m));
        CHECK(rho >= lo - 1e-9);
        CHECK(rho <= hi + 1e-9);
    }
}

TEST_CASE("vn_trace_check: frozen examples") {
    VnCertificate c1 = vn_trace_check(SymMatrix::identity(3), SymMatrix::identity(3));
    CHECK(c1.lhs == doctest::Approx(3.0));
    CHECK(c1.bound == doctest::Approx(3.0));
    CHECK(c1.equality);
    REQUIRE(c1.shared_basis.has_value());
    CHECK(c1.certificate_residual <= 1e-9);

    VnCertificate c2 = vn_trace_check(SymMatrix::diagonal({2, 1}), SymMatrix::diagonal({1, 2}));
    CHECK(c2.lhs == doctest::Approx(4.0));
    CHECK(c2.bound == doctest::Approx(5.0));
    CHECK_FALSE(c2.equality);

    SymMatrix s = oracles::s_star().to_sym();
    SymMatrix p(oracles::s_star_projector(), 1e-12);
    VnCertificate c3 = vn_trace_check(s, p);
    CHECK(c3.lhs == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(c3.bound == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(c3.equality);
    CHECK(c3.certificate_residual <= 1e-9);
    // The certified pairing attains the bound with both sequences ordered.
    REQUIRE(c3.paired_b_eigenvalues.size() == 3);
    double paired = 0.0;
    for (int i = 0; i < 3; ++i) {
        paired += c3.a_eigenvalues[static_cast<std::size_t>(i)] *
                  c3.paired_b_eigenvalues[static_cast<std::size_t>(i)];
        if (i) CHECK(c3.paired_b_eigenvalues[static_cast<std::size_t>(i - 1)] >=
                     c3.paired_b_eigenvalues[static_cast<std::size_t>(i)] - 1e-9);
    }
    CHECK(paired == doctest::Approx(c3.bound).epsilon(1e-10));

    CHECK_THROWS_AS(vn_trace_check(SymMatrix::identity(2), SymMatrix::identity(3)),
                    ArgumentError);
}

TEST_CASE("vn_trace_check: bound holds and equality certificates are tight") {
    Rng rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        int d = 2 + trial % 5;
        SymMatrix a(oracles::random_symmetric(d, rng));
        SymMatrix b(oracles::random_symmetric(d, rng));
        VnCertificate c = vn_trace_check(a, b);
        CHECK(c.lhs <= c.bound + 1e-9);
        if (c.equality) {
            REQUIRE(c.shared_basis.has_value());
            CHECK(c.certificate_residual <= 1e-9);
        }
    }
}
