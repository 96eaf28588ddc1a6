#pragma once

#include "foldmap/geometry.hpp"

#include <vector>

namespace foldmap {

/// Extreme points of a planar cloud in counter-clockwise order (monotone
/// chain; collinear boundary points are dropped). Throws degenerate-hull when
/// fewer than three extreme points remain.
std::vector<Point> convex_hull_2d(const std::vector<Point>& points);

/// Irredundant H-representation of the convex hull of a planar cloud.
/// The origin need not be interior.
HPolytope hull2d(const std::vector<Point>& points);

/// Cuts every vertex whose adjacent normals have a negative inner product
/// with a halfspace along the bisector at depth `depth`, until the polytope
/// is obtuse. N = 2 only. Throws construction-failed after `max_rounds`.
HPolytope obtusify(const HPolytope& c, double depth, int max_rounds = 64);

struct OffsetHull {
  HPolytope body;                  // obtuse, in the translated frame (origin interior)
  Point translation;               // world = body frame + translation
  std::vector<Point> hull_vertices;  // extreme points of the trace, world frame
  HPolytope hull;                  // co(trace), world frame
};

/// Obtuse polytope C with co(trace) in C and C within alpha/2 of co(trace),
/// expressed about an interior origin. Built as the Minkowski sum of the hull
/// with a regular octagon circumscribing the (alpha/4)-ball, then chamfered.
OffsetHull offset_hull(const std::vector<Point>& trace, double alpha);

/// Regular octagon circumscribing the ball of radius `inradius`, as used by
/// offset_hull; exposed for tests.
std::vector<Point> octagon_vertices(double inradius);

}  // namespace foldmap
