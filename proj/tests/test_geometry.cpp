#include "foldmap/error.hpp"
#include "foldmap/geometry.hpp"
#include "foldmap/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace foldmap;

namespace {

Point P(double x, double y) { return (Point(2) << x, y).finished(); }
Point P(double x, double y, double z) { return (Point(3) << x, y, z).finished(); }

Halfspace H(Point normal, double c) { return {std::move(normal), c}; }

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("reflect mirrors across the hyperplane") {
  CHECK(reflect(P(0, 2), H(P(0, 1), 1.)) == P(0, 0));
  const Halfspace h = H(P(0.6, 0.8), 0.5);
  const Point on = P(0.3, 0.4);  // 0.18 + 0.32 = 0.5
  CHECK((reflect(on, h) - on).norm() == 0.);
  CHECK(kind_of([] { reflect(P(1, 1), H(P(1, 1), 1.)); }) == ErrorKind::InvalidInput);
}

TEST_CASE("reflect is an isometric involution") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5., 5.);
  for (int i = 0; i < 100; ++i) {
    Point n = P(u(rng), u(rng)).normalized();
    const Halfspace h = H(n, u(rng));
    const Point a = P(u(rng), u(rng)), b = P(u(rng), u(rng));
    CHECK((reflect(reflect(a, h), h) - a).norm() <= 1e-12);
    CHECK(std::abs((reflect(a, h) - reflect(b, h)).norm() - (a - b).norm()) <= 1e-12);
  }
}

TEST_CASE("reflection matrix is I - 2 xi xi^T") {
  const Point xi = P(0.6, 0.8);
  const Matrix r = reflection_matrix(xi);
  CHECK((r * r - Matrix::Identity(2, 2)).norm() <= 1e-15);
  CHECK((r * xi + xi).norm() <= 1e-15);
  CHECK(std::abs(r.determinant() + 1.) <= 1e-15);
}

TEST_CASE("polytope validation") {
  // too few halfspaces
  CHECK(kind_of([] { HPolytope({H(P(1, 0), 1), H(P(-1, 0), 1)}); }) == ErrorKind::InvalidInput);
  // unbounded strip
  CHECK(kind_of([] { HPolytope({H(P(1, 0), 1), H(P(-1, 0), 1), H(P(0, 1), 1)}); }) == ErrorKind::InvalidInput);
  // non-unit normal
  CHECK(kind_of([] { HPolytope({H(P(2, 0), 1), H(P(-1, 0), 1), H(P(0, 1), 1), H(P(0, -1), 1)}); }) ==
        ErrorKind::InvalidInput);
  // empty
  CHECK(kind_of([] { HPolytope({H(P(1, 0), -1), H(P(-1, 0), -1), H(P(0, 1), 1), H(P(0, -1), 1)}); }) ==
        ErrorKind::InvalidInput);
  // redundant fifth halfspace x <= 5
  CHECK(kind_of([] {
          HPolytope({H(P(1, 0), 1), H(P(0, 1), 1), H(P(-1, 0), 1), H(P(0, -1), 1), H(P(1, 0), 5)});
        }) == ErrorKind::InvalidInput);
  const HPolytope pruned =
      HPolytope::pruned({H(P(1, 0), 1), H(P(0, 1), 1), H(P(-1, 0), 1), H(P(0, -1), 1), H(P(1, 0), 5)});
  CHECK(pruned.size() == 4);
}

TEST_CASE("square vertices, polygon and metrics") {
  const HPolytope s = shapes::square();
  CHECK(s.size() == 4);
  CHECK(s.vertices().size() == 4);
  CHECK(s.origin_interior());
  CHECK(s.diameter() == doctest::Approx(2. * std::sqrt(2.)).epsilon(1e-14));
  CHECK(s.centroid().norm() <= 1e-15);
  const auto poly = s.polygon();
  REQUIRE(poly.size() == 4);
  double area = 0.;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % 4];
    area += a[0] * b[1] - a[1] * b[0];
  }
  CHECK(area / 2. == doctest::Approx(4.));  // positive: counter-clockwise
  for (std::size_t j = 0; j < 4; ++j) {
    const auto [a, b] = s.edge(j);
    CHECK(std::abs(s[j].excess(a)) <= 1e-15);
    CHECK(std::abs(s[j].excess(b)) <= 1e-15);
  }
}

TEST_CASE("dilate scales offsets") {
  const HPolytope s3 = dilate(shapes::square(), 3.);
  for (const auto& h : s3.halfspaces()) CHECK(h.offset == 3.);
  const HPolytope same = dilate(shapes::square(), 1.);
  for (std::size_t j = 0; j < 4; ++j) CHECK(same[j].offset == shapes::square()[j].offset);
  const HPolytope d2 = dilate(shapes::diamond(), 2.);
  CHECK(contains(d2, P(1, 1), 1e-12));
  CHECK(!contains(d2, P(1.01, 1), 0.));
  CHECK(kind_of([] { dilate(shapes::square(), 0.); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { dilate(shapes::square(), -2.); }) == ErrorKind::InvalidInput);
}

TEST_CASE("dilate commutes with containment") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3., 3.);
  const HPolytope c = shapes::hexagon();
  for (double s : {0.5, 2., 7.}) {
    const HPolytope sc = dilate(c, s);
    for (int i = 0; i < 500; ++i) {
      const Point p = P(u(rng), u(rng));
      if (std::abs(violation(c, p)) < 1e-9 && contains(c, p, 0.) != contains(c, p, 1e-9)) continue;
      CHECK(contains(c, p, 0.) == contains(sc, s * p, 1e-12 * s));
    }
  }
}

TEST_CASE("contains with tolerance") {
  const HPolytope s = shapes::square();
  CHECK(contains(s, P(0.5, 0), 0.));
  CHECK(!contains(s, P(1.5, 0), 0.));
  CHECK(contains(s, P(1 + 1e-10, 0), 1e-9));
  CHECK(violation(s, P(1.5, 0.2)) == doctest::Approx(0.5));
  CHECK(violation(s, P(0.5, 0.2)) == 0.);
}

TEST_CASE("xi extremes") {
  CHECK(xi_extremes(shapes::square()) == std::pair{1., 1.});
  CHECK(xi_extremes(shapes::rectangle(1., 2.)) == std::pair{1., 2.});
  const auto [lo, hi] = xi_extremes(dilate(shapes::rectangle(1., 2.), 2.5));
  CHECK(lo == 2.5);
  CHECK(hi == 5.);
  // origin on the boundary
  const HPolytope shifted({H(P(1, 0), 2), H(P(0, 1), 1), H(P(-1, 0), 0), H(P(0, -1), 1)});
  CHECK(!shifted.origin_interior());
  CHECK(kind_of([&] { xi_extremes(shifted); }) == ErrorKind::InvalidInput);
}

TEST_CASE("obtuseness certificate") {
  const auto sq = check_obtuse(shapes::square());
  CHECK(sq.pass());
  CHECK(sq.pairs.size() == 4);
  for (const auto& p : sq.pairs) CHECK(std::abs(p.dot) <= 1e-15);

  const auto tri = check_obtuse(shapes::equilateral_triangle());
  CHECK(!tri.pass());
  CHECK(tri.failures().size() == 3);
  for (const auto& p : tri.pairs) CHECK(p.dot == doctest::Approx(-0.5).epsilon(1e-12));

  const auto hex = check_obtuse(shapes::hexagon());
  CHECK(hex.pass());
  CHECK(hex.pairs.size() == 6);
  for (const auto& p : hex.pairs) CHECK(p.dot == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("obtuseness in three dimensions uses edges") {
  const auto cube = check_obtuse(shapes::cube());
  CHECK(cube.pass());
  CHECK(cube.pairs.size() == 12);  // one pair per cube edge
  // Opposite faces share no edge and must not be listed.
  for (const auto& p : cube.pairs) CHECK(p.dot == doctest::Approx(0.));
}

TEST_CASE("obtuseness is unsupported beyond three dimensions") {
  std::vector<Halfspace> hs;
  for (int i = 0; i < 4; ++i) {
    Point e = Point::Zero(4);
    e[i] = 1.;
    hs.push_back(H(e, 1.));
    hs.push_back(H(-e, 1.));
  }
  const HPolytope box4(hs);
  CHECK(kind_of([&] { check_obtuse(box4); }) == ErrorKind::UnsupportedDimension);
}

TEST_CASE("projection examples") {
  const HPolytope s = shapes::square();
  CHECK((project(s, P(3, 0)) - P(1, 0)).norm() <= 1e-15);
  CHECK((project(s, P(2, 2)) - P(1, 1)).norm() <= 1e-15);
  CHECK(project(s, P(0.3, -0.2)) == P(0.3, -0.2));
  CHECK(distance(s, P(3, 0)) == doctest::Approx(2.));
  const HPolytope line({H((Point(1) << 1.).finished(), 2.), H((Point(1) << -1.).finished(), 1.)});
  CHECK(project(line, (Point(1) << 5.).finished())[0] == 2.);
  CHECK(project(line, (Point(1) << -5.).finished())[0] == -1.);
}

TEST_CASE("projection satisfies the variational inequality") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4., 4.);
  const HPolytope c = shapes::regular_polygon(7, 1., 0.3);
  Rng srng(9);
  const auto inside = sample_uniform(c, 200, srng);
  for (int i = 0; i < 200; ++i) {
    const Point p = P(u(rng), u(rng));
    const Point q = project(c, p);
    CHECK(contains(c, q, 1e-12));
    for (const auto& z : inside) CHECK((p - q).dot(z - q) <= 1e-9);
  }
}

TEST_CASE("projection is idempotent and 1-Lipschitz") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-4., 4.);
  for (const HPolytope& c : {shapes::square(), shapes::hexagon(0.7), shapes::rectangle(1., 2.)}) {
    for (int i = 0; i < 500; ++i) {
      const Point a = P(u(rng), u(rng)), b = P(u(rng), u(rng));
      const Point pa = project(c, a), pb = project(c, b);
      CHECK(project(c, pa) == pa);
      CHECK((pa - pb).norm() <= (a - b).norm() + 1e-9);
    }
  }
}

TEST_CASE("projection in three dimensions") {
  const HPolytope cube = shapes::cube();
  CHECK((project(cube, P(3, 0.5, -0.2)) - P(1, 0.5, -0.2)).norm() <= 1e-9);
  CHECK((project(cube, P(2, 2, 2)) - P(1, 1, 1)).norm() <= 1e-9);
  CHECK((project(cube, P(2, -3, 0)) - P(1, -1, 0)).norm() <= 1e-9);
  CHECK(project(cube, P(0.1, 0.2, 0.3)) == P(0.1, 0.2, 0.3));
}

TEST_CASE("named shapes") {
  CHECK(shapes::equilateral_triangle().size() == 3);
  CHECK(shapes::hexagon().size() == 6);
  CHECK(shapes::cube().vertices().size() == 8);
  const HPolytope g = shapes::regular_polygon(64, 1.);
  CHECK(g.size() == 64);
  CHECK(g[0].normal[0] == doctest::Approx(1.));
  const auto [lo, hi] = xi_extremes(g);
  CHECK(lo == doctest::Approx(1.));
  CHECK(hi == doctest::Approx(1.));
  CHECK(kind_of([] { shapes::regular_polygon(2); }) == ErrorKind::InvalidInput);
}
