#include "foldmap/hull.hpp"

#include "foldmap/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace foldmap {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double support(const std::vector<Point>& pts, const Point& dir) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : pts) best = std::max(best, p.dot(dir));
  return best;
}

}  // namespace

std::vector<Point> convex_hull_2d(const std::vector<Point>& points) {
  for (const auto& p : points) {
    if (p.size() != 2) throw Error(ErrorKind::InvalidInput, "planar hull needs 2-d points");
    if (!p.allFinite()) throw Error(ErrorKind::InvalidInput, "hull input has non-finite coordinates");
  }
  std::vector<Point> pts = points;
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a == b; }), pts.end());
  if (pts.size() < 3) throw Error(ErrorKind::DegenerateHull, "fewer than three distinct points");

  double scale = 0.;
  for (const auto& p : pts) scale = std::max(scale, (p - pts.front()).norm());
  const double eps = 1e-12 * scale * scale;

  std::vector<Point> hull;
  hull.reserve(2 * pts.size());
  for (const auto& p : pts) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= eps) hull.pop_back();
    hull.push_back(p);
  }
  const std::size_t lower = hull.size() + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (hull.size() >= lower && cross(hull[hull.size() - 2], hull.back(), *it) <= eps) hull.pop_back();
    hull.push_back(*it);
  }
  hull.pop_back();
  if (hull.size() < 3) throw Error(ErrorKind::DegenerateHull, "points are collinear");
  return hull;
}

HPolytope hull2d(const std::vector<Point>& points) {
  const auto loop = convex_hull_2d(points);
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Point& a = loop[i];
    const Point& b = loop[(i + 1) % loop.size()];
    const Point n = (Point(2) << b[1] - a[1], a[0] - b[0]).finished().normalized();
    hs.push_back(Halfspace::through(n, a));
  }
  return HPolytope(std::move(hs));
}

HPolytope obtusify(const HPolytope& c, double depth, int max_rounds) {
  if (c.dim() != 2) throw Error(ErrorKind::UnsupportedDimension, "obtusification supports N = 2");
  if (!(depth > 0.)) throw Error(ErrorKind::InvalidInput, "chamfer depth must be positive");
  HPolytope current = c;
  for (int round = 0; round < max_rounds; ++round) {
    const auto cert = check_obtuse(current);
    if (cert.pass()) return current;
    std::vector<Halfspace> hs = current.halfspaces();
    for (const auto& bad : cert.failures()) {
      // The offending vertex is the one shared by both facets.
      const auto& a = current.facet_vertices(bad.i);
      const auto& b = current.facet_vertices(bad.j);
      const auto shared = std::find_first_of(a.begin(), a.end(), b.begin(), b.end());
      const Point& vertex = current.vertices()[*shared];
      const Point bisector = (current[bad.i].normal + current[bad.j].normal).normalized();
      const double offset = bisector.dot(vertex) - depth;
      if (!(offset > 0.)) throw Error(ErrorKind::ConstructionFailed, "chamfer would cut past the origin");
      hs.push_back({bisector, offset});
    }
    current = HPolytope::pruned(std::move(hs));
  }
  if (check_obtuse(current).pass()) return current;
  throw Error(ErrorKind::ConstructionFailed, "obtusification did not terminate within the round cap");
}

std::vector<Point> octagon_vertices(double inradius) {
  const double circumradius = inradius / std::cos(std::numbers::pi / 8.);
  std::vector<Point> out;
  for (int k = 0; k < 8; ++k) {
    const double a = std::numbers::pi / 8. + k * std::numbers::pi / 4.;
    out.push_back((Point(2) << circumradius * std::cos(a), circumradius * std::sin(a)).finished());
  }
  return out;
}

OffsetHull offset_hull(const std::vector<Point>& trace, double alpha) {
  if (!(alpha > 0.)) throw Error(ErrorKind::InvalidInput, "alpha must be positive");
  const auto loop = convex_hull_2d(trace);
  HPolytope world_hull = hull2d(loop);

  Point translation = Point::Zero(2);
  for (const auto& v : loop) translation += v;
  translation /= static_cast<double>(loop.size());
  std::vector<Point> local;
  for (const auto& v : loop) local.push_back(v - translation);

  // Minkowski sum with the octagon: its facet normals are the union of both
  // normal sets and its support function is the sum of the two.
  const auto oct = octagon_vertices(alpha / 4.);
  std::vector<Point> normals;
  for (std::size_t i = 0; i < local.size(); ++i) {
    const Point& a = local[i];
    const Point& b = local[(i + 1) % local.size()];
    normals.push_back((Point(2) << b[1] - a[1], a[0] - b[0]).finished().normalized());
  }
  for (int k = 0; k < 8; ++k) {
    const double a = k * std::numbers::pi / 4.;
    normals.push_back((Point(2) << std::cos(a), std::sin(a)).finished());
  }
  std::sort(normals.begin(), normals.end(), [](const Point& a, const Point& b) {
    return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]);
  });

  // Nearly parallel normals make vertex intersection ill-conditioned; merge
  // them and keep the larger support value so the body only grows.
  constexpr double kMergeAngle = 1e-7;
  std::vector<Halfspace> hs;
  for (const auto& n : normals) {
    const double c = support(local, n) + support(oct, n);
    if (!hs.empty() && std::abs(std::atan2(n[1], n[0]) - std::atan2(hs.back().normal[1], hs.back().normal[0])) < kMergeAngle) {
      hs.back().offset = std::max(hs.back().offset, c);
      continue;
    }
    hs.push_back({n, c});
  }
  if (hs.size() > 1) {
    const Point& first = hs.front().normal;
    const Point& last = hs.back().normal;
    if ((first - last).norm() < kMergeAngle) {
      hs.front().offset = std::max(hs.front().offset, hs.back().offset);
      hs.pop_back();
    }
  }

  HPolytope body = obtusify(HPolytope::pruned(std::move(hs)), alpha / 8.);
  if (!body.origin_interior()) throw Error(ErrorKind::ConstructionFailed, "offset hull lost the interior origin");
  return OffsetHull{std::move(body), translation, loop, std::move(world_hull)};
}

}  // namespace foldmap
