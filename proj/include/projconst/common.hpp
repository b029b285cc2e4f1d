#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace projconst {

// Argument / precondition violations (bad dimensions, out-of-range n, ...).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical failures that carry a residual (non-convergence, degeneracy).
struct NumericalError : std::runtime_error {
    double residual;
    NumericalError(const std::string& what, double resid)
        : std::runtime_error(what), residual(resid) {}
};

// Entrywise sign of a matrix is only defined away from zero; offending
// positions are reported so callers can see exactly where Sgn broke down.
struct AmbiguousSignError : std::runtime_error {
    std::vector<std::pair<int, int>> positions;
    AmbiguousSignError(const std::string& what, std::vector<std::pair<int, int>> pos)
        : std::runtime_error(what), positions(std::move(pos)) {}
};

// Text-format errors with source location.
struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& what, int ln, int col)
        : std::runtime_error(what + " (line " + std::to_string(ln) + ", column " +
                             std::to_string(col) + ")"),
          line(ln), column(col) {}
};

namespace tol {
// Defaults sized for double-precision eigensolves at dim <= 64; every
// operation that uses one accepts an override.
inline constexpr double sym = 1e-12;
inline constexpr double ortho = 1e-10;
inline constexpr double resid = 1e-9;
inline constexpr double eq = 1e-9;
inline constexpr double gap = 1e-8;
inline constexpr double rank = 1e-10;
}  // namespace tol

}  // namespace projconst
