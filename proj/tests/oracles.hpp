#pragma once

// Test-only oracles, deliberately independent of the library's spectral
// path: closed-form 3x3 eigenvalues, characteristic polynomials via
// Faddeev-LeVerrier with bisection root isolation, and brute-force orbit
// partitioning of small sign matrices.

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "projconst/mat.hpp"
#include "projconst/matcore.hpp"
#include "projconst/rng.hpp"

namespace oracles {

using projconst::Mat;
using projconst::Rng;
using projconst::SignMatrix;

// Eigenvalues of a symmetric 3x3 matrix by the trigonometric closed form,
// descending.
inline std::vector<double> eig3_closed_form(const Mat& a) {
    double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    double q = (a(0, 0) + a(1, 1) + a(2, 2)) / 3.0;
    if (p1 == 0.0) {
        std::vector<double> eig{a(0, 0), a(1, 1), a(2, 2)};
        std::sort(eig.rbegin(), eig.rend());
        return eig;
    }
    double p2 = 0.0;
    for (int i = 0; i < 3; ++i) p2 += (a(i, i) - q) * (a(i, i) - q);
    p2 += 2.0 * p1;
    double p = std::sqrt(p2 / 6.0);
    Mat b(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b(i, j) = (a(i, j) - (i == j ? q : 0.0)) / p;
    double det_b = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                   b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                   b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    double r = std::clamp(det_b / 2.0, -1.0, 1.0);
    double phi = std::acos(r) / 3.0;
    double e1 = q + 2.0 * p * std::cos(phi);
    double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    double e2 = 3.0 * q - e1 - e3;
    std::vector<double> eig{e1, e2, e3};
    std::sort(eig.rbegin(), eig.rend());
    return eig;
}

// Characteristic polynomial coefficients c so that
// det(tI - A) = t^d + c[0] t^{d-1} + ... + c[d-1], by Faddeev-LeVerrier.
inline std::vector<double> char_poly(const Mat& a) {
    const int d = a.rows();
    Mat m = Mat::identity(d);
    std::vector<double> c(static_cast<std::size_t>(d));
    Mat am = a;
    for (int k = 1; k <= d; ++k) {
        if (k > 1) am = a * m;
        double tr = 0.0;
        for (int i = 0; i < d; ++i) tr += am(i, i);
        c[static_cast<std::size_t>(k - 1)] = -tr / k;
        m = am;
        for (int i = 0; i < d; ++i) m(i, i) += c[static_cast<std::size_t>(k - 1)];
    }
    return c;
}

inline double eval_monic(const std::vector<double>& c, double t) {
    double v = 1.0;
    for (double ck : c) v = v * t + ck;
    return v;
}

// All real roots of a monic polynomial known to split over the reals
// (e.g. the characteristic polynomial of a product of a symmetric and a
// nonnegative-diagonal matrix), by recursive bisection on the derivative's
// sign changes. Descending order.
inline std::vector<double> real_roots_descending(const std::vector<double>& c) {
    const int d = static_cast<int>(c.size());
    // Cauchy bound.
    double bound = 1.0;
    for (double ck : c) bound = std::max(bound, 1.0 + std::abs(ck));

    // Sample finely, bisect every sign change; multiple roots are found as
    // near-touching clusters, which is good enough at test tolerances when
    // paired with a deflation fallback.
    std::vector<double> roots;
    const int samples = 20000;
    double prev_t = -bound, prev_v = eval_monic(c, prev_t);
    for (int i = 1; i <= samples; ++i) {
        double t = -bound + 2.0 * bound * i / samples;
        double v = eval_monic(c, t);
        if (v == 0.0 || (prev_v < 0) != (v < 0)) {
            double lo = prev_t, hi = t;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                double vm = eval_monic(c, mid);
                if (vm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((eval_monic(c, lo) < 0) != (vm < 0)) hi = mid;
                else lo = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_t = t;
        prev_v = v;
    }
    // Deflate to recover multiplicities: divide out found roots and recurse
    // once if the count is short.
    if (static_cast<int>(roots.size()) < d) {
        std::vector<double> poly = c;
        std::vector<double> all = roots;
        for (double r : roots) {
            // synthetic division of the monic polynomial by (t - r)
            std::vector<double> q(poly.size() - 1);
            double carry = 1.0;
            for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
                q[i] = poly[i] + carry * r;
                carry = q[i];
            }
            // q is monic with leading 1 implied: coefficients after leading
            poly = q;
        }
        if (!poly.empty() && static_cast<int>(all.size()) < d) {
            std::vector<double> rest = real_roots_descending(poly);
            for (double r : rest) all.push_back(r);
        }
        while (static_cast<int>(all.size()) < d && !roots.empty())
            all.push_back(roots.back());
        roots = all;
    }
    std::sort(roots.rbegin(), roots.rend());
    if (static_cast<int>(roots.size()) > d) roots.resize(static_cast<std::size_t>(d));
    return roots;
}

// Brute-force orbit partition of all m x m sign matrices under signed
// permutations, for tiny m. Returns the sorted list of orbits, each orbit a
// sorted list of upper-triangle masks.
inline std::vector<std::vector<unsigned>> orbit_partition_bruteforce(int m) {
    const int t = m * (m - 1) / 2;
    auto entry_index = [m](int i, int j) { return i * m - i * (i + 1) / 2 + (j - i - 1); };
    auto get = [&](unsigned mask, int i, int j) -> int {
        if (i == j) return 1;
        int a = std::min(i, j), b = std::max(i, j);
        return (mask >> (t - 1 - entry_index(a, b))) & 1u ? 1 : -1;
    };

    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = i;
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    std::vector<std::vector<unsigned>> orbits;
    std::vector<bool> seen(1u << t, false);
    for (unsigned mask = 0; mask < (1u << t); ++mask) {
        if (seen[mask]) continue;
        std::set<unsigned> orbit;
        for (const auto& perm : perms) {
            for (unsigned signs = 0; signs < (1u << m); ++signs) {
                unsigned image = 0;
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j) {
                        int si = (signs >> i) & 1u ? -1 : 1;
                        int sj = (signs >> j) & 1u ? -1 : 1;
                        int v = si * sj *
                                get(mask, perm[static_cast<std::size_t>(i)],
                                    perm[static_cast<std::size_t>(j)]);
                        if (v > 0) image |= 1u << (t - 1 - entry_index(i, j));
                    }
                orbit.insert(image);
            }
        }
        for (unsigned x : orbit) seen[x] = true;
        orbits.emplace_back(orbit.begin(), orbit.end());
    }
    std::sort(orbits.begin(), orbits.end());
    return orbits;
}

inline unsigned mask_of_sign(const SignMatrix& s) {
    const int m = s.dim();
    const int t = m * (m - 1) / 2;
    auto entry_index = [m](int i, int j) { return i * m - i * (i + 1) / 2 + (j - i - 1); };
    unsigned mask = 0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (s(i, j) > 0) mask |= 1u << (t - 1 - entry_index(i, j));
    return mask;
}

// S* = [[1,1,-1],[1,1,1],[-1,1,1]]: the one-off-sign 3x3 matrix whose
// spectral projector drives several frozen expectations.
inline SignMatrix s_star() {
    SignMatrix s(3);
    s.set(0, 1, 1);
    s.set(0, 2, -1);
    s.set(1, 2, 1);
    return s;
}

// Its rank-2 spectral projector P = I - vv^T, v = (1,-1,1)/sqrt(3),
// computed directly from the rank-1 complement.
inline Mat s_star_projector() {
    Mat p = Mat::identity(3);
    double v[3] = {1.0 / std::sqrt(3.0), -1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) p(i, j) -= v[i] * v[j];
    return p;
}

inline Mat random_gaussian(int rows, int cols, Rng& rng) {
    Mat m(rows, cols);
    for (double& v : m.data()) v = rng.gaussian();
    return m;
}

inline Mat random_symmetric(int d, Rng& rng) {
    Mat g = random_gaussian(d, d, rng);
    Mat s(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s(i, j) = 0.5 * (g(i, j) + g(j, i));
    return s;
}

}  // namespace oracles
