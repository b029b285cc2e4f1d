#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "projconst/common.hpp"

namespace projconst {

// Exact rational scalar. Arbitrary precision so null-space elimination and
// group averaging never overflow.
using Rational = boost::multiprecision::cpp_rational;

// Parses "p", "-p/q" or a plain integer token. Decimal points are not
// accepted here; exact modules refuse lossy input.
Rational parse_rational(const std::string& token);

// Canonical serialization "p/q" (integers print without the "/1").
std::string rational_to_string(const Rational& r);

// Exact value of the double (every finite double is dyadic).
Rational rational_from_double(double x);

double rational_to_double(const Rational& r);

// Reduced row echelon form over the rationals, in place. Returns the pivot
// columns; rows of `m` are vectors of equal length.
std::vector<int> rref(std::vector<std::vector<Rational>>& m);

// Exact null-space basis of the (rows x cols) matrix, one basis vector per
// free column, in free-column order with the free coordinate set to 1.
std::vector<std::vector<Rational>> null_space(std::vector<std::vector<Rational>> m, int cols);

// Rank over the rationals.
int rational_rank(std::vector<std::vector<Rational>> m);

}  // namespace projconst
