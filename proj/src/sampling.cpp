#include "foldmap/sampling.hpp"

#include "foldmap/error.hpp"

#include <algorithm>
#include <limits>

namespace foldmap {

namespace {

Point uniform_in_box(const Point& lo, const Point& hi, Rng& rng) {
  std::uniform_real_distribution<double> unit(0., 1.);
  Point p(lo.size());
  for (Eigen::Index i = 0; i < lo.size(); ++i) p[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
  return p;
}

constexpr std::size_t kMaxRejections = 10'000'000;

}  // namespace

std::vector<Point> sample_uniform(const HPolytope& c, std::size_t count, Rng& rng) {
  const auto [lo, hi] = c.bounding_box();
  std::vector<Point> out;
  out.reserve(count);
  std::size_t tries = 0;
  while (out.size() < count) {
    if (++tries > kMaxRejections) throw Error(ErrorKind::ConstructionFailed, "rejection sampling stalled");
    Point p = uniform_in_box(lo, hi, rng);
    if (contains(c, p, 0.)) out.push_back(std::move(p));
  }
  return out;
}

std::vector<Point> sample_shell(const HPolytope& outer, const HPolytope& inner, std::size_t count, Rng& rng) {
  const auto [lo, hi] = outer.bounding_box();
  std::vector<Point> out;
  out.reserve(count);
  std::size_t tries = 0;
  while (out.size() < count) {
    if (++tries > kMaxRejections) throw Error(ErrorKind::ConstructionFailed, "rejection sampling stalled");
    Point p = uniform_in_box(lo, hi, rng);
    // outside int(inner) means some constraint is active or violated
    if (contains(outer, p, 0.) && violation(inner, p) > 0.) out.push_back(std::move(p));
  }
  return out;
}

std::vector<RaySample> sample_safe_rays(const HPolytope& c, double j, double margin, std::size_t count, Rng& rng) {
  if (c.dim() != 2) throw Error(ErrorKind::UnsupportedDimension, "safe-ray sampling supports N = 2");
  std::vector<std::size_t> usable;
  for (std::size_t f = 0; f < c.size(); ++f) {
    const auto [a, b] = c.edge(f);
    if ((b - a).norm() > 2. * margin) usable.push_back(f);
  }
  std::vector<RaySample> out;
  if (usable.empty()) return out;
  const HPolytope outer = dilate(c, j);
  std::uniform_int_distribution<std::size_t> pick(0, usable.size() - 1);
  std::uniform_real_distribution<double> unit(0., 1.);
  out.reserve(count);
  while (out.size() < count) {
    const std::size_t f = usable[pick(rng)];
    const auto [a, b] = c.edge(f);
    const double len = (b - a).norm();
    const double s = margin + (len - 2. * margin) * unit(rng);
    const Point foot = a + (b - a) * (s / len);
    const Point& dir = c[f].normal;
    // Longest step along the normal that stays inside jC.
    double t_max = std::numeric_limits<double>::infinity();
    for (const auto& h : outer.halfspaces()) {
      const double rate = h.normal.dot(dir);
      if (rate > 0.) t_max = std::min(t_max, (h.offset - h.normal.dot(foot)) / rate);
    }
    const double t = t_max * unit(rng);
    out.push_back({foot + t * dir, foot, f});
  }
  return out;
}

}  // namespace foldmap
