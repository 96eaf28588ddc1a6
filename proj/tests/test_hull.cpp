#include "foldmap/error.hpp"
#include "foldmap/hull.hpp"
#include "foldmap/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace foldmap;

namespace {

Point P(double x, double y) { return (Point(2) << x, y).finished(); }

bool has_vertex(const std::vector<Point>& vs, const Point& p) {
  for (const auto& v : vs)
    if ((v - p).norm() <= 1e-12) return true;
  return false;
}

// co(trace) in C, every vertex of C within alpha/2 of co(trace), C obtuse.
void check_sandwich(const std::vector<Point>& trace, double alpha) {
  const OffsetHull oh = offset_hull(trace, alpha);
  CHECK(check_obtuse(oh.body).pass());
  CHECK(oh.body.origin_interior());
  Rng rng(17);
  for (const auto& p : sample_uniform(oh.hull, 10000, rng)) CHECK(contains(oh.body, p - oh.translation, 1e-12));
  for (const auto& v : oh.body.vertices()) CHECK(distance(oh.hull, v + oh.translation) <= alpha / 2. + 1e-12);
}

}  // namespace

TEST_CASE("hull drops interior points") {
  const HPolytope t = hull2d({P(0, 0), P(2, 0), P(0, 2), P(0.5, 0.5)});
  CHECK(t.size() == 3);
  CHECK(t.vertices().size() == 3);
  for (const auto& v : {P(0, 0), P(2, 0), P(0, 2)}) CHECK(has_vertex(t.vertices(), v));
}

TEST_CASE("hull of square corners") {
  const HPolytope s = hull2d({P(1, 1), P(-1, 1), P(-1, -1), P(1, -1)});
  CHECK(s.size() == 4);
  for (const auto& v : s.vertices()) CHECK(std::abs(std::abs(v[0]) - 1.) <= 1e-15);
}

TEST_CASE("hull of a random disk cloud") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1., 1.);
  std::vector<Point> pts;
  while (pts.size() < 100) {
    const Point p = P(u(rng), u(rng));
    if (p.norm() <= 1.) pts.push_back(p);
  }
  const HPolytope h = hull2d(pts);
  for (const auto& p : pts) CHECK(contains(h, p, 1e-12));
  for (const auto& v : h.vertices()) CHECK(has_vertex(pts, v));
  const auto loop = convex_hull_2d(pts);
  CHECK(loop.size() == h.size());
}

TEST_CASE("degenerate hulls") {
  auto kind = [](const std::vector<Point>& pts) {
    try {
      hull2d(pts);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidInput;
  };
  CHECK(kind({P(0, 0), P(1, 1), P(2, 2), P(3, 3)}) == ErrorKind::DegenerateHull);
  CHECK(kind({P(1, 1), P(1, 1), P(1, 1)}) == ErrorKind::DegenerateHull);
  CHECK(kind({P(0, 0), P(1, 0)}) == ErrorKind::DegenerateHull);
}

TEST_CASE("collinear boundary points are dropped") {
  const auto loop = convex_hull_2d({P(0, 0), P(1, 0), P(2, 0), P(2, 2), P(0, 2), P(1, 2)});
  CHECK(loop.size() == 4);
}

TEST_CASE("octagon circumscribes the ball") {
  const auto oct = octagon_vertices(0.5);
  REQUIRE(oct.size() == 8);
  for (std::size_t k = 0; k < 8; ++k) {
    const Point mid = 0.5 * (oct[k] + oct[(k + 1) % 8]);
    CHECK(mid.norm() == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("offset hull sandwiches") {
  check_sandwich({P(-1, -1), P(1, -1), P(1, 1), P(-1, 1)}, 0.4);
  check_sandwich({P(1, 0), P(0, 1), P(-1, 0), P(0, -1)}, 0.4);
  check_sandwich({P(0, 0), P(3, 0), P(0, 0.2)}, 0.1);  // thin obtuse-angled triangle
  std::vector<Point> circle;
  for (int i = 0; i < 128; ++i) {
    const double a = 2. * std::numbers::pi * i / 128.;
    circle.push_back(P(2. + std::cos(a), -1. + std::sin(a)));
  }
  check_sandwich(circle, 0.1);
}

TEST_CASE("offset hull shrinks onto the trace") {
  const std::vector<Point> sq{P(-1, -1), P(1, -1), P(1, 1), P(-1, 1)};
  for (double alpha : {0.1, 0.01, 0.001}) {
    const OffsetHull oh = offset_hull(sq, alpha);
    double hausdorff = 0.;
    for (const auto& v : oh.body.vertices()) hausdorff = std::max(hausdorff, distance(oh.hull, v + oh.translation));
    CHECK(hausdorff <= alpha / 2.);
    CHECK(hausdorff > 0.);
  }
}

TEST_CASE("offset hull rejects degenerate traces") {
  CHECK_THROWS_AS(offset_hull({P(0, 0), P(1, 1), P(2, 2)}, 0.1), Error);
  CHECK_THROWS_AS(offset_hull({P(0, 0), P(1, 0), P(0, 1)}, 0.), Error);
}

TEST_CASE("obtusify chamfers acute vertices") {
  const HPolytope tri = shapes::equilateral_triangle();
  const HPolytope c = obtusify(tri, 0.05);
  CHECK(check_obtuse(c).pass());
  CHECK(c.size() > tri.size());
  // The chamfered body stays inside the triangle.
  for (const auto& v : c.vertices()) CHECK(contains(tri, v, 1e-12));
  // already obtuse: unchanged
  const HPolytope hex = shapes::hexagon();
  CHECK(obtusify(hex, 0.05).size() == hex.size());
}
