#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "projconst/common.hpp"

namespace projconst {

// Dense row-major matrix of doubles. Desk scale (dim <= 256), so no views,
// no expression templates.
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {
        if (rows < 0 || cols < 0) throw ArgumentError("Mat: negative dimension");
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

    Mat transposed() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.cols_ != y.rows_) throw ArgumentError("Mat multiply: inner dimension mismatch");
        Mat z(x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                double xv = x(i, k);
                if (xv == 0.0) continue;
                for (int j = 0; j < y.cols_; ++j) z(i, j) += xv * y(k, j);
            }
        return z;
    }

    friend Mat operator+(const Mat& x, const Mat& y) {
        check_same_shape(x, y, "add");
        Mat z = x;
        for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] += y.a_[i];
        return z;
    }

    friend Mat operator-(const Mat& x, const Mat& y) {
        check_same_shape(x, y, "subtract");
        Mat z = x;
        for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] -= y.a_[i];
        return z;
    }

    friend Mat operator*(double s, const Mat& x) {
        Mat z = x;
        for (double& v : z.a_) v *= s;
        return z;
    }

  private:
    static void check_same_shape(const Mat& x, const Mat& y, const char* op) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw ArgumentError(std::string("Mat ") + op + ": shape mismatch");
    }

    int rows_, cols_;
    std::vector<double> a_;
};

// Symmetric matrix carrier. Construction checks |a_ij - a_ji| <= sym_tol and
// then stores the symmetrized part, so downstream spectral code can rely on
// exact symmetry.
class SymMatrix {
  public:
    explicit SymMatrix(Mat m, double sym_tol = tol::sym) : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) throw ArgumentError("SymMatrix: not square");
        if (m_.rows() < 1) throw ArgumentError("SymMatrix: dim must be >= 1");
        for (int i = 0; i < m_.rows(); ++i)
            for (int j = i + 1; j < m_.cols(); ++j) {
                double d = std::abs(m_(i, j) - m_(j, i));
                if (!(d <= sym_tol))
                    throw ArgumentError("SymMatrix: asymmetry " + std::to_string(d) +
                                        " at (" + std::to_string(i) + "," + std::to_string(j) +
                                        ") exceeds tolerance");
                double v = 0.5 * (m_(i, j) + m_(j, i));
                m_(i, j) = m_(j, i) = v;
            }
    }

    static SymMatrix identity(int n) { return SymMatrix(Mat::identity(n)); }

    static SymMatrix diagonal(const std::vector<double>& d) {
        Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (int i = 0; i < m.rows(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
        return SymMatrix(std::move(m));
    }

    int dim() const { return m_.rows(); }
    double operator()(int i, int j) const { return m_(i, j); }
    const Mat& mat() const { return m_; }

    double trace() const {
        double t = 0.0;
        for (int i = 0; i < dim(); ++i) t += m_(i, i);
        return t;
    }

  private:
    Mat m_;
};

inline double frobenius_norm(const Mat& m) {
    double s = 0.0;
    for (double v : m.data()) s += v * v;
    return std::sqrt(s);
}

}  // namespace projconst
