#include "foldmap/convergence.hpp"
#include "foldmap/error.hpp"
#include "foldmap/folding.hpp"
#include "foldmap/hull.hpp"
#include "foldmap/sampling.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace foldmap;

namespace {

Point P(double x, double y) { return (Point(2) << x, y).finished(); }

// Schedule recurrence iterated in long double, independent of make_schedule.
std::vector<double> schedule_oracle(double m, double lo, double hi) {
  std::vector<double> t{m};
  long double x = m;
  while (!(x < 1.0L + 1.0L / m)) {
    x = (x * hi + lo) / (lo + hi);
    t.push_back(static_cast<double>(x));
  }
  return t;
}

}  // namespace

TEST_CASE("square schedule for m = 8") {
  const auto s = make_schedule(shapes::square(), 8);
  const std::vector<double> expected{8, 4.5, 2.75, 1.875, 1.4375, 1.21875, 1.109375};
  CHECK(s.levels == expected);
  CHECK(s.stop_index == 6);
  for (int k = 0; k <= 6; ++k) CHECK(std::abs(s.levels[static_cast<std::size_t>(k)] - (1. + 7. * std::ldexp(1., -k))) <= 1e-12);
}

TEST_CASE("rectangle schedule for m = 4") {
  const auto s = make_schedule(shapes::rectangle(1., 2.), 4);
  REQUIRE(s.levels.size() >= 4);
  CHECK(s.levels[1] == doctest::Approx(3.).epsilon(1e-15));
  CHECK(s.levels[2] == doctest::Approx(7. / 3.).epsilon(1e-15));
  CHECK(s.levels[3] == doctest::Approx(17. / 9.).epsilon(1e-15));
}

TEST_CASE("schedule invariants") {
  for (const HPolytope& c : {shapes::square(), shapes::rectangle(1., 2.), shapes::hexagon(0.5),
                             obtusify(shapes::equilateral_triangle(), 0.2)}) {
    for (int m : {2, 3, 8, 16, 64, 500}) {
      const auto s = make_schedule(c, m);
      const auto [lo, hi] = xi_extremes(c);
      const auto oracle = schedule_oracle(m, lo, hi);
      REQUIRE(s.levels.size() == oracle.size());
      CHECK(s.levels.front() == m);
      CHECK(s.stop_index == static_cast<int>(s.levels.size()) - 1);
      CHECK(s.levels.back() < 1. + 1. / m);
      CHECK(s.levels[s.levels.size() - 2] >= 1. + 1. / m);
      for (std::size_t k = 0; k < s.levels.size(); ++k) {
        CHECK(s.levels[k] > 1.);
        CHECK(std::abs(s.levels[k] - oracle[k]) <= 1e-12 * m);
        CHECK(std::abs(s.levels[k] - s.closed_form(static_cast<int>(k))) <= 1e-9 * m);
        if (k > 0) {
          CHECK(s.levels[k] < s.levels[k - 1]);
          CHECK(std::abs(s.levels[k] - (s.levels[k - 1] * hi + lo) / (lo + hi)) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("equal extremes halve the distance to one") {
  const auto s = make_schedule(shapes::hexagon(), 20);
  for (std::size_t k = 1; k < s.levels.size(); ++k)
    CHECK(s.levels[k] == doctest::Approx((s.levels[k - 1] + 1.) / 2.).epsilon(1e-14));
}

TEST_CASE("schedule rejects small m") {
  CHECK_THROWS_AS(make_schedule(shapes::square(), 1), Error);
  CHECK_THROWS_AS(FoldingMap::build(shapes::square(), 0), Error);
}

TEST_CASE("fold once") {
  const Halfspace right{(Point(1) << 1.).finished(), 1.};
  CHECK(fold_once((Point(1) << 2.5).finished(), right, 2.)[0] == 1.5);
  const Point seam = (Point(1) << 2.).finished();
  CHECK(fold_once(seam, right, 2.) == seam);
  const Point inner = (Point(1) << 0.123456789).finished();
  CHECK(fold_once(inner, right, 2.) == inner);
}

TEST_CASE("stage examples on the square") {
  const StageMap stage(2., shapes::square().halfspaces());
  CHECK(stage.apply(P(3, 0)) == P(1, 0));
  CHECK(stage.apply(P(3, 3)) == P(1, 1));
  CHECK(stage_apply(P(1.7, -1.9), stage) == P(1.7, -1.9));
}

TEST_CASE("stage order follows the stored order") {
  // Normal order +x, +y, -x, -y: with a different order the same point folds
  // through a different sequence but a box stage is order independent.
  const auto hs = shapes::square().halfspaces();
  std::vector<Halfspace> reversed(hs.rbegin(), hs.rend());
  const StageMap a(2., hs), b(2., reversed);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2., 2.);
  for (int i = 0; i < 100; ++i) {
    const Point p = P(u(rng), u(rng)) * 1.9;
    CHECK((a.apply(p) - b.apply(p)).norm() <= 1e-15);
  }
}

TEST_CASE("build rejects non-obtuse bodies and lists the pairs") {
  try {
    FoldingMap::build(shapes::equilateral_triangle(), 4);
    FAIL("expected obtuseness-violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ObtusenessViolation);
    const std::string msg = e.what();
    CHECK(msg.find("(0, 1)") != std::string::npos);
    CHECK(msg.find("-0.5") != std::string::npos);
  }
}

TEST_CASE("map stages mirror the schedule") {
  const FoldingMap f = FoldingMap::build(shapes::square(), 8);
  REQUIRE(f.stages().size() == 6);
  for (std::size_t k = 0; k < 6; ++k) CHECK(f.stages()[k].level() == f.schedule().levels[k + 1]);
}

TEST_CASE("identity on C is bit exact") {
  const FoldingMap f = FoldingMap::build(shapes::hexagon(), 8);
  Rng rng(1);
  for (const auto& p : sample_uniform(f.body(), 2000, rng)) {
    const auto [image, trace] = f.apply(p);
    CHECK(image == p);
    CHECK(trace.fire_count() == 0);
    CHECK(trace.orthogonal == Matrix::Identity(2, 2));
    CHECK(f(p) == p);
  }
}

TEST_CASE("ray along an axis stays on the axis") {
  const FoldingMap f = FoldingMap::build(shapes::square(), 4);
  const Point image = f(P(3, 0));
  CHECK(image[1] == 0.);
  CHECK(image[0] >= 1.);
  CHECK(image[0] <= 1.25);
}

TEST_CASE("single fold gives determinant -1") {
  const FoldingMap f = FoldingMap::build(shapes::square(), 8);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-8., 8.);
  int found = 0;
  for (int i = 0; i < 2000 && found < 20; ++i) {
    const Point p = P(u(rng), u(rng));
    const auto [image, trace] = f.apply(p);
    if (trace.fire_count() != 1) continue;
    ++found;
    CHECK(trace.orthogonal.determinant() == doctest::Approx(-1.).epsilon(1e-14));
    for (std::size_t k = 0; k < trace.stages; ++k)
      for (std::size_t j = 0; j < trace.facets; ++j)
        if (trace.fired_at(k, j))
          CHECK((trace.orthogonal - reflection_matrix(f.body()[j].normal)).norm() <= 1e-15);
  }
  CHECK(found > 0);
}

TEST_CASE("fast path and traced path agree") {
  const FoldingMap f = FoldingMap::build(obtusify(shapes::equilateral_triangle(), 0.2), 16);
  Rng rng(12);
  for (const auto& p : sample_uniform(dilate(f.body(), 16.), 1000, rng)) CHECK(f(p) == f.apply(p).first);
}

TEST_CASE("containment of the m-dilate") {
  for (const HPolytope& c : {shapes::square(), shapes::rectangle(1., 2.), shapes::hexagon(0.6),
                             obtusify(shapes::equilateral_triangle(), 0.15)}) {
    for (int m : {2, 4, 8, 16}) {
      const auto r = verify_containment(FoldingMap::build(c, m), 10000, 99);
      CHECK(r.max_violation <= 1e-9);
      CHECK(r.max_displacement == 0.);
    }
  }
}

TEST_CASE("zone property for consecutive levels") {
  for (int m : {4, 8, 32}) {
    const auto z = verify_zones(FoldingMap::build(shapes::square(), m), 1000, 5);
    CHECK(z.pairs > 0);
    CHECK(z.max_outer_excess <= 1e-9);
    CHECK(z.max_inner_depth <= 1e-9);
  }
  const auto z = verify_zones(FoldingMap::build(shapes::rectangle(1., 2.), 8), 1000, 6);
  CHECK(z.max_outer_excess <= 1e-9);
  CHECK(z.max_inner_depth <= 1e-9);
}

TEST_CASE("folding maps are 1-Lipschitz") {
  for (const HPolytope& c : {shapes::square(), shapes::hexagon(), obtusify(shapes::equilateral_triangle(), 0.1)}) {
    const auto r = verify_lipschitz(FoldingMap::build(c, 8), 4., 10000, 31);
    CHECK(r.violations == 0);
    CHECK(r.worst_excess <= 1e-9);
  }
}

TEST_CASE("jacobian is orthogonal and matches finite differences") {
  const FoldingMap f = FoldingMap::build(shapes::hexagon(), 8);
  Rng rng(21);
  const double step = 1e-6;
  int tested = 0;
  for (const auto& p : sample_uniform(dilate(f.body(), 8.), 2000, rng)) {
    const auto [q, seam] = f.jacobian(p);
    CHECK((q.transpose() * q - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(std::abs(q.determinant()) - 1.) <= 1e-12);
    if (seam <= 1e-3) continue;
    ++tested;
    Matrix fd(2, 2);
    for (int i = 0; i < 2; ++i) {
      Point e = Point::Zero(2);
      e[i] = step;
      fd.col(i) = (f(p + e) - f(p - e)) / (2. * step);
    }
    CHECK((fd - q).cwiseAbs().maxCoeff() <= 1e-6);
  }
  CHECK(tested > 1000);
}

TEST_CASE("jacobian examples") {
  const FoldingMap f = FoldingMap::build(shapes::square(), 8);
  CHECK(f.jacobian(P(0.2, 0.3)).first == Matrix::Identity(2, 2));
}

TEST_CASE("three-dimensional cube folds into its dilate") {
  const FoldingMap f = FoldingMap::build(shapes::cube(), 4);
  const auto r = verify_containment(f, 2000, 4);
  CHECK(r.max_violation <= 1e-9);
  CHECK(r.max_displacement == 0.);
}

TEST_CASE("order robustness of the folding map") {
  // Permuting the halfspaces changes the branch structure but never the
  // guarantees.
  const HPolytope base = obtusify(shapes::equilateral_triangle(), 0.2);
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 3; ++trial) {
    auto hs = base.halfspaces();
    std::shuffle(hs.begin(), hs.end(), rng);
    const FoldingMap f = FoldingMap::build(HPolytope(hs), 8);
    const auto c = verify_containment(f, 5000, static_cast<std::uint64_t>(trial));
    CHECK(c.max_violation <= 1e-9);
    CHECK(c.max_displacement == 0.);
    CHECK(verify_lipschitz(f, 4., 5000, 3).violations == 0);
  }
}
