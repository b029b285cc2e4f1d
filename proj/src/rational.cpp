#include "projconst/rational.hpp"

#include <cmath>
#include <cstdlib>

namespace projconst {

using boost::multiprecision::cpp_int;

Rational parse_rational(const std::string& token) {
    auto bad = [&](const char* why) {
        return ArgumentError("invalid rational '" + token + "': " + why);
    };
    if (token.empty()) throw bad("empty token");
    auto slash = token.find('/');
    try {
        if (slash == std::string::npos) return Rational(cpp_int(token));
        cpp_int num(token.substr(0, slash));
        cpp_int den(token.substr(slash + 1));
        if (den == 0) throw bad("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw bad("not an integer or p/q");
    }
}

std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw ArgumentError("rational_from_double: non-finite value");
    return Rational(x);
}

double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

std::vector<int> rref(std::vector<std::vector<Rational>>& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[static_cast<std::size_t>(r)], m[static_cast<std::size_t>(piv)]);
        Rational inv = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        for (auto& v : m[static_cast<std::size_t>(r)]) v /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            Rational f = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            if (f == 0) continue;
            for (int j = 0; j < cols; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                    f * m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<std::vector<Rational>> null_space(std::vector<std::vector<Rational>> m, int cols) {
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != cols)
            throw ArgumentError("null_space: ragged matrix");
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;

    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(cols), Rational(0));
        v[static_cast<std::size_t>(free)] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<std::size_t>(pivots[r])] = -m[r][static_cast<std::size_t>(free)];
        basis.push_back(std::move(v));
    }
    return basis;
}

int rational_rank(std::vector<std::vector<Rational>> m) {
    return static_cast<int>(rref(m).size());
}

}  // namespace projconst
