#include "foldmap/geometry.hpp"

#include "foldmap/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace foldmap {

namespace {

double offset_scale(const std::vector<Halfspace>& hs) {
  double s = 1.;
  for (const auto& h : hs) s = std::max(s, std::abs(h.offset));
  return s;
}

// Tolerances for vertex enumeration, relative to the polytope's size.
constexpr double kFeasibilityTol = 1e-9;
constexpr double kMergeTol = 1e-9;

bool is_bounded(const std::vector<Halfspace>& hs, int n) {
  if (n == 1) {
    bool pos = false, neg = false;
    for (const auto& h : hs) {
      pos = pos || h.normal[0] > 0.;
      neg = neg || h.normal[0] < 0.;
    }
    return pos && neg;
  }
  if (n == 2) {
    std::vector<double> angles;
    angles.reserve(hs.size());
    for (const auto& h : hs) angles.push_back(std::atan2(h.normal[1], h.normal[0]));
    std::sort(angles.begin(), angles.end());
    double gap = angles.front() + 2. * std::numbers::pi - angles.back();
    for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
    return gap < std::numbers::pi - 1e-12;
  }
  if (n == 3) {
    // Unbounded iff some direction e has xi_j . e <= 0 for every j. Such a
    // separating plane through the origin can be rotated until it touches two
    // normals, so the cross products of normal pairs are enough candidates.
    std::vector<Eigen::Vector3d> candidates;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const Eigen::Vector3d a = hs[i].normal;
      candidates.push_back(-a);
      for (std::size_t j = i + 1; j < hs.size(); ++j) {
        const Eigen::Vector3d c = a.cross(Eigen::Vector3d(hs[j].normal));
        if (c.norm() > 1e-12) {
          candidates.push_back(c.normalized());
          candidates.push_back(-c.normalized());
        }
      }
    }
    for (const auto& e : candidates) {
      bool separates = true;
      for (const auto& h : hs) {
        if (Eigen::Vector3d(h.normal).dot(e) > 1e-12) {
          separates = false;
          break;
        }
      }
      if (separates) return false;
    }
    return true;
  }
  return true;
}

bool facet_is_proper(const std::vector<Point>& verts, const std::vector<std::size_t>& on_facet, int n) {
  if (n == 1) return !on_facet.empty();
  if (static_cast<int>(on_facet.size()) < n) return false;
  if (n == 2) return true;  // two distinct vertices span the edge
  // n == 3: need three affinely independent vertices
  const Point& a = verts[on_facet[0]];
  for (std::size_t i = 1; i < on_facet.size(); ++i) {
    for (std::size_t j = i + 1; j < on_facet.size(); ++j) {
      const Eigen::Vector3d u = verts[on_facet[i]] - a;
      const Eigen::Vector3d v = verts[on_facet[j]] - a;
      if (u.cross(v).norm() > 1e-12 * std::max(1., u.norm() * v.norm())) return true;
    }
  }
  return false;
}

}  // namespace

Halfspace Halfspace::through(const Point& normal, const Point& anchor) {
  return Halfspace{normal, normal.dot(anchor)};
}

bool Halfspace::has_unit_normal() const {
  return normal.size() > 0 && std::abs(normal.norm() - 1.) <= kUnitNormalTolerance;
}

Point reflect(const Point& p, const Halfspace& h) {
  if (!h.has_unit_normal()) throw Error(ErrorKind::InvalidInput, "reflection needs a unit normal");
  if (h.normal.size() != p.size()) throw Error(ErrorKind::InvalidInput, "reflection dimension mismatch");
  return p - 2. * h.excess(p) * h.normal;
}

Matrix reflection_matrix(const Point& normal) {
  const auto n = normal.size();
  return Matrix::Identity(n, n) - 2. * normal * normal.transpose();
}

// ---------------------------------------------------------------------------

HPolytope::HPolytope(std::vector<Halfspace> halfspaces, Unchecked) : halfspaces_(std::move(halfspaces)) {
  if (halfspaces_.empty()) throw Error(ErrorKind::InvalidInput, "polytope needs at least one halfspace");
  dim_ = static_cast<int>(halfspaces_.front().normal.size());
  if (dim_ < 1) throw Error(ErrorKind::InvalidInput, "polytope dimension must be positive");
  for (const auto& h : halfspaces_) {
    if (h.normal.size() != dim_) throw Error(ErrorKind::InvalidInput, "halfspace dimensions disagree");
    if (!h.normal.allFinite() || !std::isfinite(h.offset))
      throw Error(ErrorKind::InvalidInput, "halfspace has non-finite entries");
  }
  enumerate_vertices();
}

HPolytope::HPolytope(std::vector<Halfspace> halfspaces) : HPolytope(std::move(halfspaces), Unchecked{}) {
  validate();
}

HPolytope HPolytope::pruned(std::vector<Halfspace> halfspaces) {
  HPolytope raw(std::move(halfspaces), Unchecked{});
  if (raw.dim_ > 3) return HPolytope(raw.halfspaces_);
  std::vector<Halfspace> kept;
  for (std::size_t j = 0; j < raw.size(); ++j) {
    if (!facet_is_proper(raw.vertices_, raw.facet_vertices_[j], raw.dim_)) continue;
    const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const Halfspace& k) {
      return (k.normal - raw[j].normal).norm() <= 1e-12;
    });
    if (!duplicate) kept.push_back(raw[j]);
  }
  return HPolytope(std::move(kept));
}

void HPolytope::enumerate_vertices() {
  vertices_.clear();
  facet_vertices_.assign(halfspaces_.size(), {});
  if (dim_ > 3) return;
  if (!is_bounded(halfspaces_, dim_)) return;

  const double scale = offset_scale(halfspaces_);
  const double feas = kFeasibilityTol * scale;
  const double merge = kMergeTol * scale;
  const std::size_t k = halfspaces_.size();
  const auto n = static_cast<std::size_t>(dim_);

  auto try_vertex = [&](const std::vector<std::size_t>& idx) {
    Matrix a(n, n);
    Point b(n);
    for (std::size_t r = 0; r < n; ++r) {
      a.row(static_cast<Eigen::Index>(r)) = halfspaces_[idx[r]].normal.transpose();
      b[static_cast<Eigen::Index>(r)] = halfspaces_[idx[r]].offset;
    }
    Eigen::FullPivLU<Matrix> lu(a);
    if (lu.rank() < static_cast<Eigen::Index>(n)) return;
    const Point x = lu.solve(b);
    if (!x.allFinite()) return;
    for (const auto& h : halfspaces_)
      if (h.excess(x) > feas) return;
    for (const auto& v : vertices_)
      if ((v - x).norm() <= merge) return;
    vertices_.push_back(x);
  };

  std::vector<std::size_t> idx(n);
  if (n == 1) {
    for (std::size_t i = 0; i < k; ++i) try_vertex({i});
  } else if (n == 2) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) try_vertex({i, j});
  } else {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        for (std::size_t l = j + 1; l < k; ++l) try_vertex({i, j, l});
  }

  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (std::abs(halfspaces_[j].excess(vertices_[v])) <= feas) facet_vertices_[j].push_back(v);
}

void HPolytope::validate() const {
  std::ostringstream why;
  for (std::size_t j = 0; j < size(); ++j) {
    if (!halfspaces_[j].has_unit_normal()) {
      why << "halfspace " << j << " normal has length " << halfspaces_[j].normal.norm();
      throw Error(ErrorKind::InvalidInput, why.str());
    }
  }
  if (static_cast<int>(size()) < dim_ + 1) {
    why << "need at least N+1 = " << dim_ + 1 << " halfspaces, got " << size();
    throw Error(ErrorKind::InvalidInput, why.str());
  }
  if (!is_bounded(halfspaces_, dim_)) throw Error(ErrorKind::InvalidInput, "polytope is unbounded");
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if ((halfspaces_[i].normal - halfspaces_[j].normal).norm() <= 1e-12) {
        why << "halfspaces " << i << " and " << j << " share a normal (redundant)";
        throw Error(ErrorKind::InvalidInput, why.str());
      }
  if (dim_ > 3) return;
  if (vertices_.size() < static_cast<std::size_t>(dim_ + 1))
    throw Error(ErrorKind::InvalidInput, "polytope is empty or lower-dimensional");
  const Point c = centroid();
  const double feas = kFeasibilityTol * offset_scale(halfspaces_);
  for (const auto& h : halfspaces_)
    if (h.excess(c) > -feas) throw Error(ErrorKind::InvalidInput, "polytope has empty interior");
  for (std::size_t j = 0; j < size(); ++j) {
    if (!facet_is_proper(vertices_, facet_vertices_[j], dim_)) {
      why << "halfspace " << j << " is redundant (its facet is empty)";
      throw Error(ErrorKind::InvalidInput, why.str());
    }
  }
}

std::pair<Point, Point> HPolytope::edge(std::size_t j) const {
  if (dim_ != 2) throw Error(ErrorKind::UnsupportedDimension, "edges are defined for N = 2 only");
  const Point& n = halfspaces_[j].normal;
  const Point tangent = (Point(2) << -n[1], n[0]).finished();
  const auto& fv = facet_vertices_[j];
  std::size_t lo = fv.front(), hi = fv.front();
  for (auto v : fv) {
    if (vertices_[v].dot(tangent) < vertices_[lo].dot(tangent)) lo = v;
    if (vertices_[v].dot(tangent) > vertices_[hi].dot(tangent)) hi = v;
  }
  return {vertices_[lo], vertices_[hi]};
}

std::vector<Point> HPolytope::polygon() const {
  if (dim_ != 2) throw Error(ErrorKind::UnsupportedDimension, "polygon loop is defined for N = 2 only");
  const Point c = centroid();
  std::vector<Point> out = vertices_;
  std::sort(out.begin(), out.end(), [&](const Point& a, const Point& b) {
    return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
  });
  return out;
}

bool HPolytope::origin_interior() const {
  return std::all_of(halfspaces_.begin(), halfspaces_.end(), [](const Halfspace& h) { return h.offset > 0.; });
}

double HPolytope::diameter() const {
  double d = 0.;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) d = std::max(d, (vertices_[i] - vertices_[j]).norm());
  return d;
}

Point HPolytope::centroid() const {
  Point c = Point::Zero(dim_);
  if (vertices_.empty()) return c;
  for (const auto& v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

std::pair<Point, Point> HPolytope::bounding_box() const {
  if (vertices_.empty()) throw Error(ErrorKind::UnsupportedDimension, "bounding box needs vertex enumeration (N <= 3)");
  Point lo = vertices_.front(), hi = vertices_.front();
  for (const auto& v : vertices_) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return {lo, hi};
}

// ---------------------------------------------------------------------------

HPolytope dilate(const HPolytope& c, double s) {
  if (!(s > 0.)) throw Error(ErrorKind::InvalidInput, "dilation factor must be positive");
  if (!c.origin_interior()) throw Error(ErrorKind::InvalidInput, "dilation needs the origin inside the polytope");
  std::vector<Halfspace> hs = c.halfspaces();
  for (auto& h : hs) h.offset *= s;
  return HPolytope(std::move(hs));
}

bool contains(const HPolytope& c, const Point& p, double tol) {
  for (const auto& h : c.halfspaces())
    if (h.excess(p) > tol) return false;
  return true;
}

double violation(const HPolytope& c, const Point& p) {
  double v = 0.;
  for (const auto& h : c.halfspaces()) v = std::max(v, h.excess(p));
  return v;
}

std::pair<double, double> xi_extremes(const HPolytope& c) {
  if (!c.origin_interior()) throw Error(ErrorKind::InvalidInput, "origin is not interior to the polytope");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.;
  for (const auto& h : c.halfspaces()) {
    lo = std::min(lo, h.offset);
    hi = std::max(hi, h.offset);
  }
  return {lo, hi};
}

bool ObtusenessCertificate::pass() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const AdjacentPair& p) { return p.pass; });
}

std::vector<AdjacentPair> ObtusenessCertificate::failures() const {
  std::vector<AdjacentPair> out;
  std::copy_if(pairs.begin(), pairs.end(), std::back_inserter(out), [](const AdjacentPair& p) { return !p.pass; });
  return out;
}

ObtusenessCertificate check_obtuse(const HPolytope& c) {
  if (c.dim() > 3) throw Error(ErrorKind::UnsupportedDimension, "obtuseness check supports N <= 3");
  ObtusenessCertificate cert;
  if (c.dim() == 1) return cert;  // the two endpoints never meet
  // Facets are adjacent when they share a ridge: N-1 common vertices span it.
  const std::size_t needed = c.dim() == 2 ? 1 : 2;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const auto& a = c.facet_vertices(i);
      const auto& b = c.facet_vertices(j);
      std::size_t shared = 0;
      for (auto v : a) shared += static_cast<std::size_t>(std::find(b.begin(), b.end(), v) != b.end());
      if (shared < needed) continue;
      const double dot = c[i].normal.dot(c[j].normal);
      cert.pairs.push_back({i, j, dot, dot >= 0. && dot <= 1. + 1e-12});
    }
  }
  return cert;
}

Point project(const HPolytope& c, const Point& p) {
  if (p.size() != c.dim()) throw Error(ErrorKind::InvalidInput, "projection dimension mismatch");
  // boundary points count as inside up to roundoff, so P(P(p)) == P(p) exactly
  if (contains(c, p, 1e-14 * std::max(1., p.cwiseAbs().maxCoeff()))) return p;
  if (c.dim() == 1) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const auto& h : c.halfspaces()) {
      if (h.normal[0] > 0.) hi = std::min(hi, h.offset / h.normal[0]);
      else lo = std::max(lo, h.offset / h.normal[0]);
    }
    Point q(1);
    q[0] = std::clamp(p[0], lo, hi);
    return q;
  }
  if (c.dim() == 2) {
    // The boundary is the union of the edges; take the nearest clamped foot.
    Point best = c.vertices().front();
    double best_d = (best - p).squaredNorm();
    for (std::size_t j = 0; j < c.size(); ++j) {
      const auto [a, b] = c.edge(j);
      const Point ab = b - a;
      const double len2 = ab.squaredNorm();
      const double lambda = len2 > 0. ? std::clamp((p - a).dot(ab) / len2, 0., 1.) : 0.;
      const Point q = a + lambda * ab;
      const double d = (q - p).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = q;
      }
    }
    return best;
  }
  // Dykstra's alternating projections onto the halfspaces.
  const std::size_t k = c.size();
  std::vector<Point> increments(k, Point::Zero(c.dim()));
  Point x = p;
  const double scale = std::max(1., p.norm());
  for (int sweep = 0; sweep < 200000; ++sweep) {
    const Point before = x;
    for (std::size_t j = 0; j < k; ++j) {
      const Point z = x + increments[j];
      const double e = c[j].excess(z);
      x = e > 0. ? Point(z - e * c[j].normal) : z;
      increments[j] = z - x;
    }
    if (violation(c, x) <= 1e-10 && (x - before).norm() <= 1e-14 * scale) break;
  }
  return x;
}

double distance(const HPolytope& c, const Point& p) { return (project(c, p) - p).norm(); }

// ---------------------------------------------------------------------------

namespace shapes {

HPolytope box(const Point& half_widths) {
  const auto n = half_widths.size();
  std::vector<Halfspace> hs;
  for (int sign : {1, -1}) {
    for (Eigen::Index i = 0; i < n; ++i) {
      Point e = Point::Zero(n);
      e[i] = sign;
      hs.push_back({e, half_widths[i]});
    }
  }
  return HPolytope(std::move(hs));
}

HPolytope square(double half_width) { return box(Point::Constant(2, half_width)); }

HPolytope rectangle(double half_x, double half_y) { return box((Point(2) << half_x, half_y).finished()); }

HPolytope diamond(double radius) { return regular_polygon(4, radius / std::sqrt(2.), std::numbers::pi / 4.); }

HPolytope regular_polygon(int n, double inradius, double phase) {
  if (n < 3) throw Error(ErrorKind::InvalidInput, "a polygon needs at least 3 sides");
  std::vector<Halfspace> hs;
  for (int i = 0; i < n; ++i) {
    const double a = phase + 2. * std::numbers::pi * i / n;
    hs.push_back({(Point(2) << std::cos(a), std::sin(a)).finished(), inradius});
  }
  return HPolytope(std::move(hs));
}

HPolytope equilateral_triangle(double inradius) { return regular_polygon(3, inradius, std::numbers::pi / 2.); }

HPolytope hexagon(double inradius) { return regular_polygon(6, inradius); }

HPolytope cube(double half_width) { return box(Point::Constant(3, half_width)); }

}  // namespace shapes

}  // namespace foldmap
