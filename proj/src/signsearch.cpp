#include "projconst/signsearch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "projconst/linalg.hpp"
#include "projconst/rng.hpp"
#include "projconst/threads.hpp"

namespace projconst::signsearch {

namespace {

int triangle_size(int m) { return m * (m - 1) / 2; }

// Entry order of the strict upper triangle, row-major. Entry 0 occupies the
// most significant bit so that numeric mask order equals lexicographic
// triangle order with -1 (bit 0) before +1 (bit 1).
int triangle_index(int i, int j, int m) {
    return i * m - i * (i + 1) / 2 + (j - i - 1);
}

SignMatrix mask_to_sign(std::uint32_t mask, int m) {
    const int t = triangle_size(m);
    SignMatrix s(m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            bool plus = (mask >> (t - 1 - triangle_index(i, j, m))) & 1u;
            s.set(i, j, plus ? 1 : -1);
        }
    return s;
}

}  // namespace

SimplexDiag::SimplexDiag(std::vector<double> diag, double eps)
    : diag_(std::move(diag)), eps_(eps) {
    const int d = static_cast<int>(diag_.size());
    if (d < 1) throw ArgumentError("SimplexDiag: empty diagonal");
    if (eps_ < 0.0) throw ArgumentError("SimplexDiag: eps must be >= 0");
    if (eps_ > 1.0 / d + 1e-12)
        throw ArgumentError("SimplexDiag: eps = " + std::to_string(eps_) +
                            " infeasible for dim " + std::to_string(d));
    double sum = 0.0;
    for (double v : diag_) {
        if (v < eps_ - 1e-12)
            throw ArgumentError("SimplexDiag: entry below eps");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ArgumentError("SimplexDiag: trace " + std::to_string(sum) + " != 1");
}

SimplexDiag SimplexDiag::uniform(int d, double eps) {
    return SimplexDiag(std::vector<double>(static_cast<std::size_t>(d), 1.0 / d), eps);
}

SignedPerm SignedPerm::identity(int d) {
    SignedPerm q;
    q.perm.resize(static_cast<std::size_t>(d));
    std::iota(q.perm.begin(), q.perm.end(), 0);
    q.sign.assign(static_cast<std::size_t>(d), 1);
    return q;
}

SignedPerm SignedPerm::inverse() const {
    const int d = static_cast<int>(perm.size());
    SignedPerm q;
    q.perm.resize(static_cast<std::size_t>(d));
    q.sign.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        q.perm[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
        q.sign[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
            sign[static_cast<std::size_t>(i)];
    }
    return q;
}

SignedPerm SignedPerm::composed_with(const SignedPerm& inner) const {
    const int d = static_cast<int>(perm.size());
    if (static_cast<int>(inner.perm.size()) != d)
        throw ArgumentError("SignedPerm: dimension mismatch in composition");
    SignedPerm q;
    q.perm.resize(static_cast<std::size_t>(d));
    q.sign.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        int mid = inner.perm[static_cast<std::size_t>(i)];
        q.perm[static_cast<std::size_t>(i)] = perm[static_cast<std::size_t>(mid)];
        q.sign[static_cast<std::size_t>(i)] =
            inner.sign[static_cast<std::size_t>(i)] * sign[static_cast<std::size_t>(mid)];
    }
    return q;
}

Mat SignedPerm::to_mat() const {
    const int d = static_cast<int>(perm.size());
    Mat q(d, d);
    for (int i = 0; i < d; ++i)
        q(perm[static_cast<std::size_t>(i)], i) = sign[static_cast<std::size_t>(i)];
    return q;
}

Mat conjugate(const Mat& a, const SignedPerm& q) {
    const int d = a.rows();
    Mat b(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            b(q.perm[static_cast<std::size_t>(i)], q.perm[static_cast<std::size_t>(j)]) =
                q.sign[static_cast<std::size_t>(i)] * q.sign[static_cast<std::size_t>(j)] * a(i, j);
    return b;
}

SignMatrix conjugate(const SignMatrix& s, const SignedPerm& q) {
    return SignMatrix(conjugate(s.to_mat(), q));
}

SignMatrix canonical_form(const SignMatrix& s) {
    const int m = s.dim();
    // For a fixed relabeling p, the sign choice minimizing the triangle is
    // forced: make the whole first row -1. The canonical form is the
    // minimum of that normalized triangle over all m! relabelings.
    std::vector<int> p(static_cast<std::size_t>(m));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::int8_t> best;
    std::vector<int> e(static_cast<std::size_t>(m));
    std::vector<std::int8_t> tri(static_cast<std::size_t>(triangle_size(m)));
    do {
        e[0] = 1;
        for (int j = 1; j < m; ++j)
            e[static_cast<std::size_t>(j)] =
                -s(p[0], p[static_cast<std::size_t>(j)]);
        int t = 0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                tri[static_cast<std::size_t>(t++)] = static_cast<std::int8_t>(
                    e[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(j)] *
                    s(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]));
        if (best.empty() || tri < best) best = tri;
    } while (std::next_permutation(p.begin(), p.end()));

    SignMatrix out(m);
    int t = 0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) out.set(i, j, best[static_cast<std::size_t>(t++)]);
    return out;
}

std::vector<SignMatrix> enumerate_sign_classes(int m) {
    if (m < 2 || m > 7)
        throw ArgumentError("enumerate_sign_classes: m = " + std::to_string(m) +
                            " out of range [2, 7]");
    const int t = triangle_size(m);
    const std::uint32_t space = 1u << t;

    // Orbit closure over the whole space with two generator families:
    // adjacent transpositions (bit permutations of the triangle) and the
    // sign flip of coordinate 0 (an xor mask). Together they generate the
    // full signed-permutation action.
    std::vector<std::vector<int>> perm_source;
    for (int k = 0; k + 1 < m; ++k) {
        std::vector<int> p(static_cast<std::size_t>(m));
        std::iota(p.begin(), p.end(), 0);
        std::swap(p[static_cast<std::size_t>(k)], p[static_cast<std::size_t>(k + 1)]);
        std::vector<int> src(static_cast<std::size_t>(t));
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                int a = p[static_cast<std::size_t>(i)], b = p[static_cast<std::size_t>(j)];
                if (a > b) std::swap(a, b);
                src[static_cast<std::size_t>(triangle_index(i, j, m))] = triangle_index(a, b, m);
            }
        perm_source.push_back(std::move(src));
    }
    std::uint32_t flip_mask = 0;
    for (int j = 1; j < m; ++j) flip_mask |= 1u << (t - 1 - triangle_index(0, j, m));

    auto apply_perm = [&](std::uint32_t mask, const std::vector<int>& src) {
        std::uint32_t out = 0;
        for (int entry = 0; entry < t; ++entry)
            if ((mask >> (t - 1 - src[static_cast<std::size_t>(entry)])) & 1u)
                out |= 1u << (t - 1 - entry);
        return out;
    };

    std::vector<bool> visited(space, false);
    std::vector<std::uint32_t> reps;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t start = 0; start < space; ++start) {
        if (visited[start]) continue;
        std::uint32_t min_mask = start;
        stack.assign(1, start);
        visited[start] = true;
        while (!stack.empty()) {
            std::uint32_t cur = stack.back();
            stack.pop_back();
            min_mask = std::min(min_mask, cur);
            for (const auto& src : perm_source) {
                std::uint32_t nxt = apply_perm(cur, src);
                if (!visited[nxt]) {
                    visited[nxt] = true;
                    stack.push_back(nxt);
                }
            }
            std::uint32_t flipped = cur ^ flip_mask;
            if (!visited[flipped]) {
                visited[flipped] = true;
                stack.push_back(flipped);
            }
        }
        reps.push_back(min_mask);
    }
    std::sort(reps.begin(), reps.end());
    std::vector<SignMatrix> out;
    out.reserve(reps.size());
    for (std::uint32_t mask : reps) out.push_back(mask_to_sign(mask, m));
    return out;
}

namespace {

// f(D) = pi_n(sqrt(D) S sqrt(D)) and its spectrum.
double simplex_objective(const SignMatrix& s, const std::vector<double>& diag, int n,
                         Spectrum* spectrum_out = nullptr) {
    const int d = s.dim();
    std::vector<double> root(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) root[i] = std::sqrt(std::max(0.0, diag[i]));
    Mat m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m(i, j) = root[static_cast<std::size_t>(i)] * s(i, j) * root[static_cast<std::size_t>(j)];
    Spectrum sp = eig_sym(SymMatrix(std::move(m)));
    double f = 0.0;
    for (int i = 0; i < n; ++i) f += sp.eigenvalues[static_cast<std::size_t>(i)];
    if (spectrum_out) *spectrum_out = std::move(sp);
    return f;
}

// Euclidean projection onto {d : sum = 1, d_i >= eps}.
std::vector<double> project_simplex(std::vector<double> v, double eps) {
    const int d = static_cast<int>(v.size());
    const double budget = 1.0 - eps * d;
    for (double& x : v) x -= eps;
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cum = 0.0, theta = 0.0;
    for (int k = 0; k < d; ++k) {
        cum += u[static_cast<std::size_t>(k)];
        double cand = (cum - budget) / (k + 1);
        if (u[static_cast<std::size_t>(k)] - cand > 0.0) theta = cand;
    }
    std::vector<double> out(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        out[static_cast<std::size_t>(i)] = std::max(0.0, v[static_cast<std::size_t>(i)] - theta) + eps;
    return out;
}

struct AscentResult {
    std::vector<double> diag;
    double value;
    bool degenerate_seen;
};

AscentResult ascend(const SignMatrix& s, int n, double eps, std::vector<double> d,
                    const SimplexMaxOpts& opts) {
    d = project_simplex(std::move(d), eps);
    double f = simplex_objective(s, d, n);
    bool degenerate_seen = false;
    double step = 0.25;
    for (int iter = 0; iter < opts.max_iters && step > 1e-12; ++iter) {
        bool degenerate = false;
        std::vector<double> g = simplex_objective_gradient(s, d, n, opts.gap_tol, &degenerate);
        if (degenerate) {
            // Supergradient from the deterministic top-n projector; take a
            // shorter step.
            degenerate_seen = true;
            step *= 0.5;
        }
        bool improved = false;
        while (step > 1e-12) {
            std::vector<double> cand(d.size());
            for (std::size_t i = 0; i < d.size(); ++i) cand[i] = d[i] + step * g[i];
            cand = project_simplex(std::move(cand), eps);
            double fc = simplex_objective(s, cand, n);
            if (fc > f + 1e-15) {
                double move = 0.0;
                for (std::size_t i = 0; i < d.size(); ++i)
                    move = std::max(move, std::abs(cand[i] - d[i]));
                d = std::move(cand);
                f = fc;
                improved = true;
                if (move < 1e-14) step = 0.0;
                break;
            }
            step *= 0.5;
        }
        if (improved)
            step = std::min(step * 2.0, 1.0);
        else
            break;
    }
    return {std::move(d), f, degenerate_seen};
}

// All compositions k_1 + ... + k_d = total, visited in lexicographic order.
template <typename Fn>
void for_each_composition(int d, int total, std::vector<int>& k, int pos, Fn&& fn) {
    if (pos == d - 1) {
        k[static_cast<std::size_t>(pos)] = total;
        fn(k);
        return;
    }
    for (int v = 0; v <= total; ++v) {
        k[static_cast<std::size_t>(pos)] = v;
        for_each_composition(d, total - v, k, pos + 1, fn);
    }
}

}  // namespace

std::vector<double> simplex_objective_gradient(const SignMatrix& s,
                                               const std::vector<double>& diag, int n,
                                               double gap_tol, bool* degenerate) {
    const int d = s.dim();
    if (n < 1 || n > d) throw ArgumentError("simplex_objective_gradient: n out of range");
    Spectrum sp;
    simplex_objective(s, diag, n, &sp);
    if (degenerate) *degenerate = false;
    if (n < d) {
        double gap = sp.eigenvalues[static_cast<std::size_t>(n - 1)] -
                     sp.eigenvalues[static_cast<std::size_t>(n)];
        if (gap <= gap_tol && degenerate) *degenerate = true;
    }

    // P = top-n projector of M = sqrt(D) S sqrt(D);
    // df/dd_k = (1/sqrt(d_k)) sum_j P_kj S_kj sqrt(d_j).
    Mat p(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double acc = 0.0;
            for (int c = 0; c < n; ++c) acc += sp.eigenvectors(i, c) * sp.eigenvectors(j, c);
            p(i, j) = acc;
        }
    std::vector<double> g(static_cast<std::size_t>(d), 0.0);
    for (int k = 0; k < d; ++k) {
        double dk = diag[static_cast<std::size_t>(k)];
        if (dk < 1e-13) continue;  // frozen at the boundary
        double acc = 0.0;
        for (int j = 0; j < d; ++j)
            acc += p(k, j) * s(k, j) * std::sqrt(std::max(0.0, diag[static_cast<std::size_t>(j)]));
        g[static_cast<std::size_t>(k)] = acc / std::sqrt(dk);
    }
    return g;
}

SimplexMaxResult maximize_over_simplex(const SignMatrix& s, int n, double eps,
                                       const SimplexMaxOpts& opts) {
    const int d = s.dim();
    if (n < 1 || n > d) throw ArgumentError("maximize_over_simplex: n out of range");
    if (eps < 0.0 || eps > 1.0 / d + 1e-15)
        throw ArgumentError("maximize_over_simplex: eps = " + std::to_string(eps) +
                            " infeasible for dim " + std::to_string(d));

    SimplexMaxResult result;

    if (eps >= 1.0 / d - 1e-15) {
        // Singleton feasible set.
        std::vector<double> uniform(static_cast<std::size_t>(d), 1.0 / d);
        result.value = simplex_objective(s, uniform, n);
        result.best_diag = std::move(uniform);
        result.restarts_used = 0;
        return result;
    }

    // Start points: warm starts, the barycenter, then a Kronecker
    // low-discrepancy sequence mapped onto the simplex.
    std::vector<std::vector<double>> starts = opts.warm_starts;
    starts.emplace_back(static_cast<std::size_t>(d), 1.0 / d);
    {
        double phi = 2.0;
        for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (d + 1));
        std::vector<double> alpha(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) alpha[static_cast<std::size_t>(j)] = std::pow(1.0 / phi, j + 1);
        Rng shift_rng(opts.seed);
        std::vector<double> shift(static_cast<std::size_t>(d));
        for (double& v : shift) v = shift_rng.uniform();
        for (int k = 1; k < opts.restarts; ++k) {
            std::vector<double> point(static_cast<std::size_t>(d));
            double sum = 0.0;
            for (int j = 0; j < d; ++j) {
                double u = std::fmod(shift[static_cast<std::size_t>(j)] +
                                         k * alpha[static_cast<std::size_t>(j)],
                                     1.0);
                point[static_cast<std::size_t>(j)] = -std::log(std::max(1e-12, 1.0 - u));
                sum += point[static_cast<std::size_t>(j)];
            }
            for (double& v : point) v = eps + (1.0 - eps * d) * (v / sum);
            starts.push_back(std::move(point));
        }
    }

    std::vector<AscentResult> runs(starts.size());
    parallel_for(static_cast<int>(starts.size()), [&](int i) {
        runs[static_cast<std::size_t>(i)] =
            ascend(s, n, eps, starts[static_cast<std::size_t>(i)], opts);
    });

    int best = 0;
    for (int i = 1; i < static_cast<int>(runs.size()); ++i)
        if (runs[static_cast<std::size_t>(i)].value > runs[static_cast<std::size_t>(best)].value)
            best = i;
    result.best_diag = runs[static_cast<std::size_t>(best)].diag;
    result.value = runs[static_cast<std::size_t>(best)].value;
    result.restarts_used = static_cast<int>(starts.size());
    for (const auto& r : runs) result.degenerate_gap_seen |= r.degenerate_seen;

    if (d <= 4) {
        const int g = std::max(1, static_cast<int>(std::lround(1.0 / opts.grid)));
        double grid_best = -1e300;
        std::vector<double> grid_arg;
        std::vector<int> k(static_cast<std::size_t>(d));
        std::vector<double> point(static_cast<std::size_t>(d));
        for_each_composition(d, g, k, 0, [&](const std::vector<int>& comp) {
            for (int i = 0; i < d; ++i)
                point[static_cast<std::size_t>(i)] =
                    eps + (1.0 - eps * d) * (static_cast<double>(comp[static_cast<std::size_t>(i)]) / g);
            double f = simplex_objective(s, point, n);
            if (f > grid_best) {
                grid_best = f;
                grid_arg = point;
            }
        });
        // Polish from the grid optimum; the returned value then dominates
        // the certificate up to ascent numerics.
        AscentResult polished = ascend(s, n, eps, grid_arg, opts);
        if (polished.value > result.value) {
            result.value = polished.value;
            result.best_diag = polished.diag;
            result.degenerate_gap_seen |= polished.degenerate_seen;
        }
        result.grid_certificate = GridCertificate{1.0 / g, grid_best};
        if (grid_best > result.value + 1e-6)
            throw NumericalError("maximize_over_simplex: grid certificate exceeds the "
                                 "returned value",
                                 grid_best - result.value);
    }
    return result;
}

EpsLimitResult eps_limit_check(const SignMatrix& s, int n, const std::vector<double>& eps_seq,
                               const SimplexMaxOpts& opts) {
    const int d = s.dim();
    if (eps_seq.empty()) throw ArgumentError("eps_limit_check: empty eps sequence");
    for (std::size_t i = 0; i < eps_seq.size(); ++i) {
        if (eps_seq[i] <= 0.0 || eps_seq[i] > 1.0 / d + 1e-15)
            throw ArgumentError("eps_limit_check: eps out of (0, 1/d]");
        if (i > 0 && eps_seq[i] >= eps_seq[i - 1])
            throw ArgumentError("eps_limit_check: sequence must be strictly decreasing");
    }

    EpsLimitResult out;
    SimplexMaxOpts run_opts = opts;
    for (double eps : eps_seq) {
        SimplexMaxResult r = maximize_over_simplex(s, n, eps, run_opts);
        out.values.push_back(r.value);
        // The optimum stays feasible for every smaller eps.
        run_opts.warm_starts = {r.best_diag};
    }
    SimplexMaxResult unrestricted = maximize_over_simplex(s, n, 0.0, run_opts);
    out.eps_zero_value = unrestricted.value;

    out.nondecreasing = true;
    for (std::size_t i = 1; i < out.values.size(); ++i)
        if (out.values[i] < out.values[i - 1] - 1e-10) out.nondecreasing = false;
    // The restricted values never genuinely exceed the unrestricted one.
    out.limit_reached = out.eps_zero_value - out.values.back() <= opts.limit_tol;
    return out;
}

std::vector<SignedPerm> stabilizer(const SymMatrix& a, double match_tol) {
    const int d = a.dim();
    if (d > 7)
        throw ArgumentError("stabilizer: exhaustive search over 2^d d! is infeasible for dim " +
                            std::to_string(d));
    std::vector<SignedPerm> group;
    std::vector<int> p(static_cast<std::size_t>(d));
    std::iota(p.begin(), p.end(), 0);
    do {
        for (std::uint32_t bits = 0; bits < (1u << d); ++bits) {
            SignedPerm q;
            q.perm = p;
            q.sign.resize(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i)
                q.sign[static_cast<std::size_t>(i)] = (bits >> i) & 1u ? -1 : 1;
            bool match = true;
            for (int i = 0; i < d && match; ++i)
                for (int j = 0; j < d && match; ++j) {
                    double lhs = q.sign[static_cast<std::size_t>(i)] *
                                 q.sign[static_cast<std::size_t>(j)] * a(i, j);
                    if (std::abs(lhs - a(q.perm[static_cast<std::size_t>(i)],
                                         q.perm[static_cast<std::size_t>(j)])) > match_tol)
                        match = false;
                }
            if (match) group.push_back(std::move(q));
        }
    } while (std::next_permutation(p.begin(), p.end()));

    // Inverses always verified; pairwise closure only at sizes where the
    // quadratic sweep is affordable (it is implied structurally: the set of
    // exact symmetries of a fixed matrix is a group).
    std::set<SignedPerm> members(group.begin(), group.end());
    for (const auto& q : group)
        if (!members.count(q.inverse()))
            throw NumericalError("stabilizer: inverse missing, tolerance artifact", match_tol);
    if (group.size() <= 2048) {
        for (const auto& q1 : group)
            for (const auto& q2 : group)
                if (!members.count(q1.composed_with(q2)))
                    throw NumericalError("stabilizer: closure failed, tolerance artifact",
                                         match_tol);
    }
    return group;
}

std::vector<Rational> symmetrize_exact(const std::vector<Rational>& diag,
                                       const std::vector<SignedPerm>& group) {
    const int d = static_cast<int>(diag.size());
    if (group.empty()) throw ArgumentError("symmetrize_exact: empty group");
    std::set<SignedPerm> members(group.begin(), group.end());
    bool has_identity = members.count(SignedPerm::identity(d)) > 0;
    if (!has_identity) throw ArgumentError("symmetrize_exact: group lacks the identity");
    for (const auto& q : group) {
        if (static_cast<int>(q.perm.size()) != d)
            throw ArgumentError("symmetrize_exact: group element dimension mismatch");
        if (!members.count(q.inverse()))
            throw ArgumentError("symmetrize_exact: set not closed under inversion");
    }
    if (group.size() <= 4096) {
        for (const auto& q1 : group)
            for (const auto& q2 : group)
                if (!members.count(q1.composed_with(q2)))
                    throw ArgumentError("symmetrize_exact: set not closed under composition");
    }

    std::vector<Rational> acc(static_cast<std::size_t>(d), Rational(0));
    for (const auto& q : group)
        for (int i = 0; i < d; ++i)
            acc[static_cast<std::size_t>(q.perm[static_cast<std::size_t>(i)])] +=
                diag[static_cast<std::size_t>(i)];
    Rational order(static_cast<long>(group.size()));
    for (auto& v : acc) v /= order;
    return acc;
}

SimplexDiag symmetrize(const SimplexDiag& d, const std::vector<SignedPerm>& group) {
    std::vector<Rational> exact;
    exact.reserve(d.diag().size());
    for (double v : d.diag()) exact.push_back(rational_from_double(v));
    std::vector<Rational> avg = symmetrize_exact(exact, group);
    std::vector<double> out;
    out.reserve(avg.size());
    for (const auto& v : avg) out.push_back(rational_to_double(v));
    return SimplexDiag(std::move(out), d.eps());
}

SignMaxResult maximize_over_sign_matrices(const std::vector<double>& lambda_diag, int n) {
    const int m = static_cast<int>(lambda_diag.size());
    if (m < 1 || m > 6)
        throw ArgumentError("maximize_over_sign_matrices: dim out of range [1, 6]");
    const int t = triangle_size(m);
    double best_value = -1e300;
    std::uint32_t best_mask = 0;
    for (std::uint32_t mask = 0; mask < (1u << t); ++mask) {
        SignMatrix s = mask_to_sign(mask, m);
        double f = pi_n_diag_product(s.to_sym(), lambda_diag, n);
        if (f > best_value + 1e-15) {
            best_value = f;
            best_mask = mask;
        }
    }
    return {mask_to_sign(best_mask, m), best_value};
}

namespace {

double stiefel_objective(const Mat& u) {
    Mat p = u * u.transposed();
    for (double& v : p.data()) v = std::abs(v);
    Spectrum sp = eig_sym(SymMatrix(std::move(p), 1e-9));
    return sp.eigenvalues.front();
}

}  // namespace

StiefelSearchResult stiefel_rho_search(int n, int m, int restarts, std::uint64_t seed) {
    if (n < 1 || m < 1 || n > m || m > 8)
        throw ArgumentError("stiefel_rho_search: need 1 <= n <= m <= 8");
    if (n == m)
        return {Mat::identity(m), 1.0, 0};

    Rng master(seed);
    std::vector<Mat> best_u(static_cast<std::size_t>(std::max(1, restarts)));
    std::vector<double> best_f(best_u.size(), -1e300);

    parallel_for(static_cast<int>(best_u.size()), [&](int r) {
        Rng rng = master.fork(static_cast<std::uint64_t>(r));
        Mat u(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) u(i, j) = rng.gaussian();
        u = orthonormalize_columns(u);
        double f = stiefel_objective(u);

        double step = 0.25;
        const double h = 1e-6;
        for (int iter = 0; iter < 300 && step > 1e-10; ++iter) {
            Mat grad(m, n);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) {
                    Mat up = u, um = u;
                    up(i, j) += h;
                    um(i, j) -= h;
                    grad(i, j) = (stiefel_objective(orthonormalize_columns(up)) -
                                  stiefel_objective(orthonormalize_columns(um))) /
                                 (2.0 * h);
                }
            bool improved = false;
            while (step > 1e-10) {
                Mat cand = u;
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < n; ++j) cand(i, j) += step * grad(i, j);
                cand = orthonormalize_columns(cand);
                double fc = stiefel_objective(cand);
                if (fc > f + 1e-14) {
                    u = std::move(cand);
                    f = fc;
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if (improved)
                step = std::min(step * 2.0, 1.0);
            else
                break;
        }
        best_u[static_cast<std::size_t>(r)] = std::move(u);
        best_f[static_cast<std::size_t>(r)] = f;
    });

    int best = 0;
    for (int r = 1; r < static_cast<int>(best_f.size()); ++r)
        if (best_f[static_cast<std::size_t>(r)] > best_f[static_cast<std::size_t>(best)]) best = r;
    Mat p = best_u[static_cast<std::size_t>(best)] * best_u[static_cast<std::size_t>(best)].transposed();
    return {std::move(p), best_f[static_cast<std::size_t>(best)],
            static_cast<int>(best_f.size())};
}

}  // namespace projconst::signsearch
