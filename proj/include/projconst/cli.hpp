#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace projconst::cli {

enum class Format { json, csv, text };

// One fully-resolved invocation. Identical configs produce byte-identical
// reports: all randomness is derived from `seed`, all merge orders are
// deterministic.
struct RunConfig {
    std::string command;  // pin | lambda | search | blowup | kobos |
                          // duality-fuzz | vn-check | eps-limit | stabilizer
    Format format = Format::json;
    std::uint64_t seed = 0;

    std::optional<int> n;
    std::optional<int> m;
    std::optional<double> eps;
    std::vector<double> eps_seq;
    int restarts = 32;
    double grid = 1.0 / 60.0;
    std::vector<int> mult;
    int truncation = 8;
    int trials = 100;
    std::optional<int> dim;
    bool assume_maximizer = false;

    std::string matrix_path;
    std::string basis_path;
    std::string s0_path;
    std::string p0_path;
    std::string a_path;
    std::string b_path;
    std::string diag_path;
    std::string symmetrize_diag_path;

    std::map<std::string, double> tol;  // overrides, keyed by --tol.<name>

    double tol_or(const std::string& name, double fallback) const {
        auto it = tol.find(name);
        return it == tol.end() ? fallback : it->second;
    }
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailed = 2;

// Executes the command, writing the report to `out` and diagnostics to
// `err`. Exit status: 0 on success, 2 when a mathematical check failed,
// 1 on usage or parse errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace projconst::cli
