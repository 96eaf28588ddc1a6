#pragma once

// Halfspaces, reflections and bounded H-polytopes in R^N.
//
// An HPolytope is the intersection {x : xi_j . x <= c_j, j = 1..K} of closed
// halfspaces with unit outward normals. The stored order of the halfspaces is
// significant: folding maps apply their reflections in exactly this order.

#include <Eigen/Dense>

#include <cstddef>
#include <utility>
#include <vector>

namespace foldmap {

using Point = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kUnitNormalTolerance = 1e-12;

struct Halfspace {
  Point normal;        // outward unit normal
  double offset = 0.;  // the set {x : normal . x <= offset}

  /// Halfspace whose boundary hyperplane passes through `anchor`.
  static Halfspace through(const Point& normal, const Point& anchor);

  double excess(const Point& p) const { return normal.dot(p) - offset; }
  bool has_unit_normal() const;
};

/// Affine reflection across the boundary hyperplane of `h`:
/// p - 2 (xi . p - c) xi. Throws invalid-input on a non-unit normal.
Point reflect(const Point& p, const Halfspace& h);

/// Reflection matrix I - 2 xi xi^T of the linear part.
Matrix reflection_matrix(const Point& normal);

class HPolytope {
 public:
  /// Validates unit normals, K >= N+1, boundedness, nonempty interior and
  /// irredundancy (N <= 3). Throws invalid-input otherwise.
  explicit HPolytope(std::vector<Halfspace> halfspaces);

  /// Drops redundant or duplicate halfspaces before validating.
  static HPolytope pruned(std::vector<Halfspace> halfspaces);

  int dim() const { return dim_; }
  std::size_t size() const { return halfspaces_.size(); }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const Halfspace& operator[](std::size_t j) const { return halfspaces_[j]; }

  /// Vertex set (N <= 3 only; empty for larger N).
  const std::vector<Point>& vertices() const { return vertices_; }
  /// Indices into vertices() lying on facet j.
  const std::vector<std::size_t>& facet_vertices(std::size_t j) const { return facet_vertices_[j]; }

  /// For N == 2: the two endpoints of facet j's edge.
  std::pair<Point, Point> edge(std::size_t j) const;
  /// For N == 2: vertices in counter-clockwise order.
  std::vector<Point> polygon() const;

  bool origin_interior() const;
  double diameter() const;
  Point centroid() const;
  /// Axis-aligned bounding box (lo, hi) of the vertex set.
  std::pair<Point, Point> bounding_box() const;

 private:
  struct Unchecked {};
  HPolytope(std::vector<Halfspace> halfspaces, Unchecked);

  void enumerate_vertices();
  void validate() const;

  int dim_ = 0;
  std::vector<Halfspace> halfspaces_;
  std::vector<Point> vertices_;
  std::vector<std::vector<std::size_t>> facet_vertices_;
};

/// sC: offsets scale by s, normals unchanged. Requires s > 0 and the origin
/// strictly inside C.
HPolytope dilate(const HPolytope& c, double s);

bool contains(const HPolytope& c, const Point& p, double tol);

/// Largest positive constraint excess max_j (xi_j . p - c_j), clamped at 0.
double violation(const HPolytope& c, const Point& p);

/// Minimum and maximum distance from the origin to the facet hyperplanes.
std::pair<double, double> xi_extremes(const HPolytope& c);

struct AdjacentPair {
  std::size_t i = 0;
  std::size_t j = 0;
  double dot = 0.;
  bool pass = false;
};

/// Inner products of adjacent facet normals. Adjacent means the two facets
/// share a ridge: a vertex for N = 2, an edge for N = 3.
struct ObtusenessCertificate {
  std::vector<AdjacentPair> pairs;

  bool pass() const;
  std::vector<AdjacentPair> failures() const;
};

/// Throws unsupported-dimension for N > 3.
ObtusenessCertificate check_obtuse(const HPolytope& c);

/// Nearest point of C. Exact face/vertex enumeration for N <= 2; Dykstra's
/// alternating projections with residual 1e-10 for N >= 3.
Point project(const HPolytope& c, const Point& p);

double distance(const HPolytope& c, const Point& p);

namespace shapes {

HPolytope box(const Point& half_widths);
HPolytope square(double half_width = 1.);
HPolytope rectangle(double half_x, double half_y);
HPolytope diamond(double radius = 1.);
/// Regular n-gon whose facets lie at distance `inradius` from the origin;
/// the first facet normal points along +x.
HPolytope regular_polygon(int n, double inradius = 1., double phase = 0.);
HPolytope equilateral_triangle(double inradius = 1.);
HPolytope hexagon(double inradius = 1.);
HPolytope cube(double half_width = 1.);

}  // namespace shapes

}  // namespace foldmap
