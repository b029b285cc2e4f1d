#include "projconst/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace projconst {

SignMatrix::SignMatrix(int dim) : dim_(dim), s_(static_cast<std::size_t>(dim) * dim, 1) {
    if (dim < 1) throw ArgumentError("SignMatrix: dim must be >= 1");
}

SignMatrix::SignMatrix(const Mat& m) : dim_(m.rows()), s_() {
    if (m.rows() != m.cols()) throw ArgumentError("SignMatrix: not square");
    if (dim_ < 1) throw ArgumentError("SignMatrix: dim must be >= 1");
    s_.resize(static_cast<std::size_t>(dim_) * dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            double v = m(i, j);
            if (v != 1.0 && v != -1.0)
                throw ArgumentError("SignMatrix: entry not +-1 at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
            if (i == j && v != 1.0) throw ArgumentError("SignMatrix: diagonal must be +1");
            if (m(j, i) != v) throw ArgumentError("SignMatrix: not symmetric");
            s_[static_cast<std::size_t>(i) * dim_ + j] = static_cast<std::int8_t>(v);
        }
}

void SignMatrix::set(int i, int j, int value) {
    if (i == j) throw ArgumentError("SignMatrix::set: diagonal is fixed at +1");
    if (value != 1 && value != -1) throw ArgumentError("SignMatrix::set: value must be +-1");
    s_[static_cast<std::size_t>(i) * dim_ + j] = static_cast<std::int8_t>(value);
    s_[static_cast<std::size_t>(j) * dim_ + i] = static_cast<std::int8_t>(value);
}

Mat SignMatrix::to_mat() const {
    Mat m(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
    return m;
}

SymMatrix SignMatrix::to_sym() const { return SymMatrix(to_mat()); }

std::vector<std::int8_t> SignMatrix::upper_triangle() const {
    std::vector<std::int8_t> t;
    t.reserve(static_cast<std::size_t>(dim_) * (dim_ - 1) / 2);
    for (int i = 0; i < dim_; ++i)
        for (int j = i + 1; j < dim_; ++j)
            t.push_back(s_[static_cast<std::size_t>(i) * dim_ + j]);
    return t;
}

Spectrum eig_sym(const SymMatrix& A, const EigOpts& opts) {
    const int d = A.dim();
    Mat a = A.mat();
    Mat v = Mat::identity(d);
    const double scale = std::max(1.0, a.max_abs());

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) s += a(i, j) * a(i, j);
        return std::sqrt(2.0 * s);
    };

    const double stop = 1e-15 * scale * d;
    int sweep = 0;
    while (off_norm() > stop) {
        if (++sweep > opts.max_sweeps)
            throw NumericalError("eig_sym: Jacobi sweeps exhausted, off-diagonal residual " +
                                     std::to_string(off_norm()),
                                 off_norm());
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                double apq = a(p, q);
                if (std::abs(apq) <= 1e-18 * scale) continue;
                double app = a(p, p), aqq = a(q, q);
                double theta = 0.5 * std::atan2(2.0 * apq, aqq - app);
                double c = std::cos(theta), s = std::sin(theta);

                // Rotate rows/columns p and q.
                for (int k = 0; k < d; ++k) {
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < d; ++k) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                for (int k = 0; k < d; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    // Sort descending, stable, so degenerate clusters keep sweep order.
    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i) > a(j, j); });

    Spectrum sp;
    sp.eigenvalues.resize(static_cast<std::size_t>(d));
    sp.eigenvectors = Mat(d, d);
    for (int col = 0; col < d; ++col) {
        int src = order[static_cast<std::size_t>(col)];
        sp.eigenvalues[static_cast<std::size_t>(col)] = a(src, src);
        double col_max = 0.0;
        for (int k = 0; k < d; ++k) col_max = std::max(col_max, std::abs(v(k, src)));
        // Orientation rule: first component that is unambiguously nonzero
        // must be positive.
        double flip = 1.0;
        for (int k = 0; k < d; ++k) {
            if (std::abs(v(k, src)) > 1e-8 * col_max) {
                flip = v(k, src) > 0.0 ? 1.0 : -1.0;
                break;
            }
        }
        for (int k = 0; k < d; ++k) sp.eigenvectors(k, col) = flip * v(k, src);
    }

    // Postconditions.
    Mat vt_v = sp.eigenvectors.transposed() * sp.eigenvectors;
    double ortho_resid = (vt_v - Mat::identity(d)).max_abs();
    if (ortho_resid > opts.ortho_tol)
        throw NumericalError("eig_sym: eigenvector orthonormality residual too large",
                             ortho_resid);
    Mat av = A.mat() * sp.eigenvectors;
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i)
            av(i, j) -= sp.eigenvectors(i, j) * sp.eigenvalues[static_cast<std::size_t>(j)];
    double resid = av.max_abs();
    if (resid > opts.resid_tol * scale)
        throw NumericalError("eig_sym: eigenpair residual too large", resid);
    return sp;
}

double pi_n(const SymMatrix& A, int n) {
    if (n < 1 || n > A.dim())
        throw ArgumentError("pi_n: n = " + std::to_string(n) + " out of range for dim " +
                            std::to_string(A.dim()));
    Spectrum sp = eig_sym(A);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += sp.eigenvalues[static_cast<std::size_t>(i)];
    return s;
}

double pi_n_diag_product(const SymMatrix& A, const std::vector<double>& diag, int n) {
    const int d = A.dim();
    if (static_cast<int>(diag.size()) != d)
        throw ArgumentError("pi_n_diag_product: diagonal length mismatch");
    std::vector<double> root(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        if (diag[i] < 0.0)
            throw ArgumentError("pi_n_diag_product: negative diagonal entry at " +
                                std::to_string(i));
        root[i] = std::sqrt(diag[i]);
    }
    Mat m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m(i, j) = root[static_cast<std::size_t>(i)] * A(i, j) * root[static_cast<std::size_t>(j)];
    return pi_n(SymMatrix(std::move(m)), n);
}

SymMatrix abs_entrywise(const SymMatrix& A) {
    Mat m = A.mat();
    for (double& v : m.data()) v = std::abs(v);
    return SymMatrix(std::move(m));
}

SignMatrix sgn_entrywise(const SymMatrix& A, double zero_tol) {
    if (!(zero_tol > 0.0)) throw ArgumentError("sgn_entrywise: zero_tol must be positive");
    std::vector<std::pair<int, int>> ambiguous;
    for (int i = 0; i < A.dim(); ++i)
        for (int j = i; j < A.dim(); ++j)
            if (std::abs(A(i, j)) <= zero_tol) ambiguous.emplace_back(i, j);
    if (!ambiguous.empty()) {
        std::string msg = "sgn_entrywise: ambiguous sign at";
        for (auto [i, j] : ambiguous)
            msg += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
        throw AmbiguousSignError(msg, std::move(ambiguous));
    }
    SignMatrix s(A.dim());
    for (int i = 0; i < A.dim(); ++i)
        for (int j = i + 1; j < A.dim(); ++j) s.set(i, j, A(i, j) > 0.0 ? 1 : -1);
    for (int i = 0; i < A.dim(); ++i)
        if (A(i, i) < 0.0)
            throw AmbiguousSignError("sgn_entrywise: negative diagonal entry breaks the "
                                     "unit-diagonal sign structure at (" + std::to_string(i) +
                                     "," + std::to_string(i) + ")",
                                     {{i, i}});
    return s;
}

double perron_radius(const SymMatrix& M) {
    for (int i = 0; i < M.dim(); ++i)
        for (int j = 0; j < M.dim(); ++j)
            if (M(i, j) < 0.0)
                throw ArgumentError("perron_radius: negative entry at (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
    return eig_sym(M).eigenvalues.front();
}

VnCertificate vn_trace_check(const SymMatrix& A, const SymMatrix& B, double eq_tol) {
    const int d = A.dim();
    if (B.dim() != d) throw ArgumentError("vn_trace_check: dimension mismatch");

    VnCertificate cert;
    cert.lhs = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) cert.lhs += A(i, j) * B(j, i);

    Spectrum sa = eig_sym(A);
    Spectrum sb = eig_sym(B);
    cert.a_eigenvalues = sa.eigenvalues;
    cert.b_eigenvalues = sb.eigenvalues;
    cert.bound = 0.0;
    for (int i = 0; i < d; ++i)
        cert.bound += sa.eigenvalues[static_cast<std::size_t>(i)] *
                      sb.eigenvalues[static_cast<std::size_t>(i)];
    cert.equality = (cert.bound - cert.lhs) <= eq_tol;
    if (!cert.equality) return cert;

    // Equality: rotate within each eigenspace of A to diagonalize the
    // restriction of B, then order by B's eigenvalue inside each cluster.
    // If the bound is attained the result diagonalizes both matrices with
    // the pairing that realizes it.
    const double scale = std::max(1.0, std::max(A.mat().max_abs(), B.mat().max_abs()));
    const double cluster_tol = 1e-9 * scale;
    Mat basis = sa.eigenvectors;
    std::vector<double> beta(static_cast<std::size_t>(d), 0.0);
    int lo = 0;
    while (lo < d) {
        int hi = lo + 1;
        while (hi < d && sa.eigenvalues[static_cast<std::size_t>(lo)] -
                                 sa.eigenvalues[static_cast<std::size_t>(hi)] <=
                             cluster_tol)
            ++hi;
        int k = hi - lo;
        if (k == 1) {
            double q = 0.0;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) q += basis(i, lo) * B(i, j) * basis(j, lo);
            beta[static_cast<std::size_t>(lo)] = q;
        } else {
            Mat restricted(k, k);
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) {
                    double q = 0.0;
                    for (int i = 0; i < d; ++i)
                        for (int j = 0; j < d; ++j)
                            q += basis(i, lo + r) * B(i, j) * basis(j, lo + c);
                    restricted(r, c) = q;
                }
            for (int r = 0; r < k; ++r)
                for (int c = r + 1; c < k; ++c) {
                    double avg = 0.5 * (restricted(r, c) + restricted(c, r));
                    restricted(r, c) = restricted(c, r) = avg;
                }
            Spectrum sub = eig_sym(SymMatrix(std::move(restricted)));
            Mat rotated(d, k);
            for (int i = 0; i < d; ++i)
                for (int c = 0; c < k; ++c) {
                    double s = 0.0;
                    for (int r = 0; r < k; ++r)
                        s += basis(i, lo + r) * sub.eigenvectors(r, c);
                    rotated(i, c) = s;
                }
            for (int i = 0; i < d; ++i)
                for (int c = 0; c < k; ++c) basis(i, lo + c) = rotated(i, c);
            for (int c = 0; c < k; ++c)
                beta[static_cast<std::size_t>(lo + c)] = sub.eigenvalues[static_cast<std::size_t>(c)];
        }
        lo = hi;
    }

    // Certificate residual: both matrices must act diagonally on the basis.
    double resid = 0.0;
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            double va = 0.0, vb = 0.0;
            for (int k = 0; k < d; ++k) {
                va += A(i, k) * basis(k, j);
                vb += B(i, k) * basis(k, j);
            }
            resid = std::max(resid, std::abs(va - sa.eigenvalues[static_cast<std::size_t>(j)] *
                                                      basis(i, j)));
            resid = std::max(resid, std::abs(vb - beta[static_cast<std::size_t>(j)] * basis(i, j)));
        }
    }
    cert.certificate_residual = resid;
    cert.shared_basis = std::move(basis);
    cert.paired_b_eigenvalues = std::move(beta);
    return cert;
}

}  // namespace projconst
