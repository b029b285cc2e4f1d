#include "projconst/linalg.hpp"

#include <cmath>

#include "projconst/matcore.hpp"

namespace projconst {

Mat orthonormalize_columns(const Mat& m, double tol) {
    Mat q = m;
    const int d = q.rows(), n = q.cols();
    for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < j; ++k) {
                double dot = 0.0;
                for (int i = 0; i < d; ++i) dot += q(i, k) * q(i, j);
                for (int i = 0; i < d; ++i) q(i, j) -= dot * q(i, k);
            }
            double norm = 0.0;
            for (int i = 0; i < d; ++i) norm += q(i, j) * q(i, j);
            norm = std::sqrt(norm);
            if (norm < tol)
                throw NumericalError("orthonormalize_columns: dependent columns", norm);
            for (int i = 0; i < d; ++i) q(i, j) /= norm;
        }
    }
    return q;
}

Mat solve_linear(Mat a, Mat b) {
    const int n = a.rows();
    if (a.cols() != n || b.rows() != n) throw ArgumentError("solve_linear: shape mismatch");
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
        if (std::abs(a(piv, col)) < 1e-14)
            throw NumericalError("solve_linear: singular matrix", std::abs(a(piv, col)));
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            for (int j = 0; j < b.cols(); ++j) std::swap(b(col, j), b(piv, j));
        }
        for (int i = col + 1; i < n; ++i) {
            double f = a(i, col) / a(col, col);
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) a(i, j) -= f * a(col, j);
            for (int j = 0; j < b.cols(); ++j) b(i, j) -= f * b(col, j);
        }
    }
    for (int col = n - 1; col >= 0; --col) {
        for (int j = 0; j < b.cols(); ++j) {
            double s = b(col, j);
            for (int k = col + 1; k < n; ++k) s -= a(col, k) * b(k, j);
            b(col, j) = s / a(col, col);
        }
    }
    return b;
}

SingularExtent singular_extent(const Mat& m) {
    Mat gram = m.transposed() * m;
    Spectrum sp = eig_sym(SymMatrix(std::move(gram), 1e-9));
    double lo = sp.eigenvalues.back(), hi = sp.eigenvalues.front();
    return {std::sqrt(std::max(0.0, lo)), std::sqrt(std::max(0.0, hi))};
}

SpanSplit span_and_complement(const Mat& m, double rank_tol) {
    // Householder QR with column pivoting; the Gram route would square the
    // condition number and bury rank decisions at this tolerance.
    const int d = m.rows();
    const int n = m.cols();
    Mat r = m;
    Mat q = Mat::identity(d);
    std::vector<int> cols(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) cols[static_cast<std::size_t>(j)] = j;

    auto col_norm_from = [&](int col, int row0) {
        double s = 0.0;
        for (int i = row0; i < d; ++i) s += r(i, col) * r(i, col);
        return std::sqrt(s);
    };

    const int steps = std::min(d, n);
    double first_pivot = 0.0;
    int rank = 0;
    for (int k = 0; k < steps; ++k) {
        int best = k;
        double best_norm = col_norm_from(k, k);
        for (int j = k + 1; j < n; ++j) {
            double nj = col_norm_from(j, k);
            if (nj > best_norm) {
                best_norm = nj;
                best = j;
            }
        }
        if (best != k)
            for (int i = 0; i < d; ++i) std::swap(r(i, k), r(i, best));
        if (k == 0) first_pivot = best_norm;
        if (best_norm <= rank_tol * std::max(1.0, first_pivot)) break;
        ++rank;

        // Householder reflection zeroing column k below the diagonal.
        std::vector<double> v(static_cast<std::size_t>(d - k));
        double alpha = r(k, k) >= 0 ? -best_norm : best_norm;
        v[0] = r(k, k) - alpha;
        for (int i = k + 1; i < d; ++i) v[static_cast<std::size_t>(i - k)] = r(i, k);
        double vnorm2 = 0.0;
        for (double x : v) vnorm2 += x * x;
        if (vnorm2 == 0.0) continue;
        for (int j = k; j < n; ++j) {
            double dot = 0.0;
            for (int i = k; i < d; ++i) dot += v[static_cast<std::size_t>(i - k)] * r(i, j);
            double f = 2.0 * dot / vnorm2;
            for (int i = k; i < d; ++i) r(i, j) -= f * v[static_cast<std::size_t>(i - k)];
        }
        for (int j = 0; j < d; ++j) {
            double dot = 0.0;
            for (int i = k; i < d; ++i) dot += v[static_cast<std::size_t>(i - k)] * q(j, i);
            double f = 2.0 * dot / vnorm2;
            for (int i = k; i < d; ++i) q(j, i) -= f * v[static_cast<std::size_t>(i - k)];
        }
    }

    SpanSplit out;
    out.rank = rank;
    out.span = Mat(d, rank);
    out.complement = Mat(d, d - rank);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < rank; ++j) out.span(i, j) = q(i, j);
        for (int j = rank; j < d; ++j) out.complement(i, j - rank) = q(i, j);
    }
    return out;
}

double containment_residual(const Mat& x, const Mat& y_orthonormal) {
    Mat coeff = y_orthonormal.transposed() * x;
    Mat back = y_orthonormal * coeff;
    return (x - back).max_abs();
}

}  // namespace projconst
