#pragma once

#include <iosfwd>
#include <string>

#include "projconst/mat.hpp"

namespace projconst {

// Matrix text format, shared by every file-based interface:
//   first line "rows cols", then `rows` lines of whitespace-separated
//   entries; an entry is either a decimal literal or an exact rational "p/q".
Mat read_matrix(std::istream& in, const std::string& source_name = "<stream>");
Mat read_matrix_file(const std::string& path);

void write_matrix(std::ostream& out, const Mat& m);
std::string matrix_to_string(const Mat& m);

}  // namespace projconst
