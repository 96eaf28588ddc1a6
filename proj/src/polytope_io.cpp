#include "foldmap/polytope_io.hpp"

#include "foldmap/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace foldmap {

namespace {

// Next line with comments stripped that still has content.
bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

std::string format_exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

HPolytope read_polytope(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw Error(ErrorKind::InvalidInput, "polytope file is empty");
  std::istringstream header(line);
  long n = 0, k = 0;
  if (!(header >> n >> k) || n < 1 || k < 1)
    throw Error(ErrorKind::InvalidInput, "polytope header must be 'N K' with positive integers");
  std::string extra;
  if (header >> extra) throw Error(ErrorKind::InvalidInput, "trailing tokens in polytope header");

  std::vector<Halfspace> hs;
  for (long row = 0; row < k; ++row) {
    if (!next_content_line(in, line)) {
      std::ostringstream msg;
      msg << "expected " << k << " halfspace rows, found " << row;
      throw Error(ErrorKind::InvalidInput, msg.str());
    }
    std::istringstream fields(line);
    Point normal(n);
    double c = 0.;
    for (long i = 0; i < n; ++i)
      if (!(fields >> normal[i])) throw Error(ErrorKind::InvalidInput, "malformed halfspace row: " + line);
    if (!(fields >> c)) throw Error(ErrorKind::InvalidInput, "malformed halfspace row: " + line);
    if (fields >> extra) throw Error(ErrorKind::InvalidInput, "trailing tokens in halfspace row: " + line);
    const double len = normal.norm();
    if (!(len > 0.) || !std::isfinite(len)) throw Error(ErrorKind::InvalidInput, "halfspace row has a zero normal");
    if (std::abs(len - 1.) <= kUnitNormalTolerance) hs.push_back({normal, c});
    else hs.push_back({normal / len, c / len});
  }
  if (next_content_line(in, line)) throw Error(ErrorKind::InvalidInput, "unexpected content after the last halfspace row");
  return HPolytope(std::move(hs));
}

HPolytope read_polytope_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open polytope file " + path);
  return read_polytope(in);
}

void write_polytope(std::ostream& out, const HPolytope& c) {
  out << c.dim() << ' ' << c.size() << '\n';
  for (const auto& h : c.halfspaces()) {
    for (Eigen::Index i = 0; i < h.normal.size(); ++i) out << format_exact(h.normal[i]) << ' ';
    out << format_exact(h.offset) << '\n';
  }
}

std::string polytope_to_string(const HPolytope& c) {
  std::ostringstream out;
  write_polytope(out, c);
  return out.str();
}

}  // namespace foldmap
