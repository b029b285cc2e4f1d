#include "projconst/matio.hpp"

#include <cctype>
#include <cmath>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "projconst/rational.hpp"

namespace projconst {

namespace {

struct Tokenizer {
    std::istream& in;
    std::string source;
    int line = 0;

    // Returns tokens of one non-empty line along with their column positions.
    bool next_line(std::vector<std::pair<std::string, int>>& tokens) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++line;
            tokens.clear();
            int col = 0;
            std::size_t i = 0;
            while (i < raw.size()) {
                while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
                if (i >= raw.size() || raw[i] == '#') break;
                col = static_cast<int>(i) + 1;
                std::size_t start = i;
                while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
                tokens.emplace_back(raw.substr(start, i - start), col);
            }
            if (!tokens.empty()) return true;
        }
        return false;
    }
};

double parse_entry(const std::string& tok, int line, int col) {
    if (tok.find('/') != std::string::npos) {
        try {
            return rational_to_double(parse_rational(tok));
        } catch (const ArgumentError& e) {
            throw ParseError(e.what(), line, col);
        }
    }
    const char* begin = tok.data();
    const char* end = begin + tok.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value))
        throw ParseError("invalid matrix entry '" + tok + "'", line, col);
    return value;
}

int parse_dim(const std::string& tok, int line, int col) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || value <= 0)
        throw ParseError("invalid dimension '" + tok + "'", line, col);
    return value;
}

}  // namespace

Mat read_matrix(std::istream& in, const std::string& source_name) {
    Tokenizer tz{in, source_name};
    std::vector<std::pair<std::string, int>> tokens;
    if (!tz.next_line(tokens)) throw ParseError("empty matrix file", 1, 1);
    if (tokens.size() != 2)
        throw ParseError("header must be 'rows cols'", tz.line, tokens[0].second);
    int rows = parse_dim(tokens[0].first, tz.line, tokens[0].second);
    int cols = parse_dim(tokens[1].first, tz.line, tokens[1].second);

    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!tz.next_line(tokens))
            throw ParseError("expected " + std::to_string(rows) + " rows, got " +
                                 std::to_string(i), tz.line + 1, 1);
        if (static_cast<int>(tokens.size()) != cols)
            throw ParseError("row has " + std::to_string(tokens.size()) + " entries, expected " +
                                 std::to_string(cols), tz.line, tokens.back().second);
        for (int j = 0; j < cols; ++j)
            m(i, j) = parse_entry(tokens[static_cast<std::size_t>(j)].first, tz.line,
                                  tokens[static_cast<std::size_t>(j)].second);
    }
    return m;
}

Mat read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open matrix file '" + path + "'");
    return read_matrix(in, path);
}

void write_matrix(std::ostream& out, const Mat& m) {
    out << m.rows() << " " << m.cols() << "\n";
    out.precision(17);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out << " ";
            out << m(i, j);
        }
        out << "\n";
    }
}

std::string matrix_to_string(const Mat& m) {
    std::ostringstream os;
    write_matrix(os, m);
    return os.str();
}

}  // namespace projconst
