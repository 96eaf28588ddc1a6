#pragma once

// Line-oriented polytope text format:
//
//   # comment
//   N K
//   xi_1 ... xi_N c      (K lines, meaning xi . x <= c)
//
// '#' starts a comment anywhere on a line. Readers normalise each row so the
// normal has unit length; writers emit unit normals with round-trip precision.

#include "foldmap/geometry.hpp"

#include <iosfwd>
#include <string>

namespace foldmap {

HPolytope read_polytope(std::istream& in);
HPolytope read_polytope_file(const std::string& path);
void write_polytope(std::ostream& out, const HPolytope& c);
std::string polytope_to_string(const HPolytope& c);

/// Formats with enough digits to round-trip a double.
std::string format_exact(double v);

}  // namespace foldmap
