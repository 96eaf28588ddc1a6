#include "foldmap/folding.hpp"

#include "foldmap/error.hpp"
#include "foldmap/polytope_io.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace foldmap {

double DilationSchedule::closed_form(int k) const {
  const double sum = xi_min + xi_max;
  const double r = xi_max / sum;
  double geometric = 0.;
  double power = 1.;
  for (int i = 0; i < k; ++i) {
    geometric += power;
    power *= r;
  }
  return power * horizon + (xi_min / sum) * geometric;
}

DilationSchedule make_schedule(const HPolytope& c, int m) {
  if (m < 2) throw Error(ErrorKind::InvalidInput, "folding maps need m >= 2");
  const auto [lo, hi] = xi_extremes(c);
  DilationSchedule s;
  s.horizon = m;
  s.xi_min = lo;
  s.xi_max = hi;
  const double target = 1. + 1. / m;
  double t = m;
  s.levels.push_back(t);
  while (!(t < target)) {
    if (static_cast<int>(s.levels.size()) > kScheduleCap)
      throw Error(ErrorKind::ConstructionFailed, "dilation schedule exceeded its iteration cap");
    t = (t * hi + lo) / (lo + hi);
    s.levels.push_back(t);
  }
  s.stop_index = static_cast<int>(s.levels.size()) - 1;
  return s;
}

Point fold_once(const Point& p, const Halfspace& h, double s) {
  const double excess = h.normal.dot(p) - s * h.offset;
  if (excess <= 0.) return p;
  return p - 2. * excess * h.normal;
}

StageMap::StageMap(double level, std::vector<Halfspace> halfspaces)
    : level_(level), halfspaces_(std::move(halfspaces)) {}

Point StageMap::apply(const Point& p) const {
  Point x = p;
  for (const auto& h : halfspaces_) {
    const double excess = h.normal.dot(x) - level_ * h.offset;
    if (excess > 0.) x -= 2. * excess * h.normal;
  }
  return x;
}

Point stage_apply(const Point& p, const StageMap& stage) { return stage.apply(p); }

std::size_t BranchTrace::fire_count() const {
  return static_cast<std::size_t>(std::count(fired.begin(), fired.end(), std::uint8_t{1}));
}

FoldingMap::FoldingMap(HPolytope body, int m, DilationSchedule schedule)
    : body_(std::move(body)), m_(m), schedule_(std::move(schedule)) {
  // Stage k folds at level t_k, k = 1 .. k(m); t_0 = T itself is never folded.
  for (std::size_t k = 1; k < schedule_.levels.size(); ++k) stages_.emplace_back(schedule_.levels[k], body_.halfspaces());
}

FoldingMap FoldingMap::build(const HPolytope& c, int m) {
  if (m < 2) throw Error(ErrorKind::InvalidInput, "folding maps need m >= 2");
  const auto cert = check_obtuse(c);
  if (!cert.pass()) {
    std::ostringstream msg;
    msg << "adjacent facet normals must have nonnegative inner products; failing pairs:";
    for (const auto& f : cert.failures()) msg << " (" << f.i << ", " << f.j << "): " << f.dot << ';';
    throw Error(ErrorKind::ObtusenessViolation, msg.str());
  }
  DilationSchedule s = make_schedule(c, m);
  return FoldingMap(c, m, std::move(s));
}

Point FoldingMap::operator()(const Point& p) const {
  Point x = p;
  for (const auto& stage : stages_) {
    const double s = stage.level();
    for (const auto& h : stage.halfspaces()) {
      const double excess = h.normal.dot(x) - s * h.offset;
      if (excess > 0.) x -= 2. * excess * h.normal;
    }
  }
  return x;
}

std::pair<Point, BranchTrace> FoldingMap::apply(const Point& p) const {
  BranchTrace trace;
  trace.stages = stages_.size();
  trace.facets = body_.size();
  trace.fired.assign(trace.stages * trace.facets, 0);
  trace.orthogonal = Matrix::Identity(p.size(), p.size());
  trace.seam_distance = std::numeric_limits<double>::infinity();
  Point x = p;
  for (std::size_t k = 0; k < stages_.size(); ++k) {
    const double s = stages_[k].level();
    const auto& hs = stages_[k].halfspaces();
    for (std::size_t j = 0; j < hs.size(); ++j) {
      const double excess = hs[j].normal.dot(x) - s * hs[j].offset;
      trace.seam_distance = std::min(trace.seam_distance, std::abs(excess));
      if (excess > 0.) {
        x -= 2. * excess * hs[j].normal;
        trace.orthogonal = reflection_matrix(hs[j].normal) * trace.orthogonal;
        trace.fired[k * trace.facets + j] = 1;
      }
    }
  }
  return {std::move(x), std::move(trace)};
}

std::pair<Matrix, double> FoldingMap::jacobian(const Point& p) const {
  auto [image, trace] = apply(p);
  return {std::move(trace.orthogonal), trace.seam_distance};
}

void write_descriptor(std::ostream& out, const FoldingMap& f) {
  out << "# folding map descriptor\n";
  out << "m " << f.m() << '\n';
  out << "levels " << f.stages().size() << '\n';
  for (const auto& stage : f.stages()) out << format_exact(stage.level()) << '\n';
  out << "polytope\n";
  write_polytope(out, f.body());
}

FoldingMap read_descriptor(std::istream& in) {
  std::string line;
  auto next = [&](std::string& l) {
    while (std::getline(in, l)) {
      if (auto hash = l.find('#'); hash != std::string::npos) l.erase(hash);
      if (l.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  auto expect_key = [&](const std::string& key) {
    if (!next(line)) throw Error(ErrorKind::InvalidInput, "descriptor ended before '" + key + "'");
    std::istringstream fields(line);
    std::string k;
    fields >> k;
    if (k != key) throw Error(ErrorKind::InvalidInput, "descriptor expected '" + key + "', found '" + k + "'");
    return fields.str().substr(k.size());
  };
  const int m = std::stoi(expect_key("m"));
  const std::size_t count = std::stoul(expect_key("levels"));
  std::vector<double> levels;
  for (std::size_t i = 0; i < count; ++i) {
    if (!next(line)) throw Error(ErrorKind::InvalidInput, "descriptor is missing schedule levels");
    levels.push_back(std::stod(line));
  }
  expect_key("polytope");
  FoldingMap f = FoldingMap::build(read_polytope(in), m);
  if (f.stages().size() != levels.size())
    throw Error(ErrorKind::InvalidInput, "descriptor stage count does not match the rebuilt schedule");
  for (std::size_t i = 0; i < levels.size(); ++i)
    if (f.stages()[i].level() != levels[i])
      throw Error(ErrorKind::InvalidInput, "descriptor level " + std::to_string(i + 1) + " does not match the rebuilt schedule");
  return f;
}

}  // namespace foldmap
