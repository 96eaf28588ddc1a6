#pragma once

// Folding maps: piecewise isometries built from conditional affine
// reflections that fix a convex polytope C, send its m-dilate into its
// (1 + 1/m)-dilate and approximate the nearest-point projection onto C.
//
// A single fold at level s reflects everything beyond the hyperplane s*H_j
// back across it. A stage folds across every facet of sC in stored order, and
// the full map runs the stages for the decreasing levels t_1 > ... > t_k(m) of
// the dilation schedule.

#include "foldmap/geometry.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace foldmap {

/// Levels t_0 = T = m, t_{k+1} = (t_k * xi_max + xi_min) / (xi_min + xi_max),
/// stopped at the first index k(m) with t_k(m) < 1 + 1/m.
struct DilationSchedule {
  double horizon = 0.;  // T
  double xi_min = 0.;
  double xi_max = 0.;
  std::vector<double> levels;  // t_0 ... t_k(m)
  int stop_index = 0;          // k(m)

  /// Closed form t_k = r^k T + (xi_min / (xi_min + xi_max)) sum_{i<k} r^i,
  /// r = xi_max / (xi_min + xi_max).
  double closed_form(int k) const;
};

inline constexpr int kScheduleCap = 10'000;

/// Throws invalid-input for m < 2 or a polytope without interior origin, and
/// construction-failed if k(m) would exceed kScheduleCap.
DilationSchedule make_schedule(const HPolytope& c, int m);

/// Identity on s*H^- (boundary included); reflection across s*H otherwise.
Point fold_once(const Point& p, const Halfspace& h, double s);

class StageMap {
 public:
  StageMap(double level, std::vector<Halfspace> halfspaces);

  double level() const { return level_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }

  Point apply(const Point& p) const;

 private:
  double level_;
  std::vector<Halfspace> halfspaces_;
};

Point stage_apply(const Point& p, const StageMap& stage);

/// Which folds fired along one evaluation, the accumulated orthogonal
/// Jacobian, and how close the path came to any tested fold hyperplane.
struct BranchTrace {
  std::size_t stages = 0;
  std::size_t facets = 0;
  std::vector<std::uint8_t> fired;  // stage-major, `facets` entries per stage
  Matrix orthogonal;
  double seam_distance = 0.;

  bool fired_at(std::size_t stage, std::size_t facet) const { return fired[stage * facets + facet] != 0; }
  std::size_t fire_count() const;
  bool same_branch(const BranchTrace& other) const { return fired == other.fired; }
};

class FoldingMap {
 public:
  /// Throws obtuseness-violation (listing the failing normal pairs) when C is
  /// not obtuse, invalid-input for m < 2.
  static FoldingMap build(const HPolytope& c, int m);

  const HPolytope& body() const { return body_; }
  int m() const { return m_; }
  const DilationSchedule& schedule() const { return schedule_; }
  const std::vector<StageMap>& stages() const { return stages_; }

  /// Image point only.
  Point operator()(const Point& p) const;

  std::pair<Point, BranchTrace> apply(const Point& p) const;

  /// Orthogonal Jacobian of the branch containing p, and the seam distance.
  std::pair<Matrix, double> jacobian(const Point& p) const;

 private:
  FoldingMap(HPolytope body, int m, DilationSchedule schedule);

  HPolytope body_;
  int m_;
  DilationSchedule schedule_;
  std::vector<StageMap> stages_;
};

/// Descriptor text: the base polytope block plus the schedule levels, enough
/// to rebuild the identical map.
void write_descriptor(std::ostream& out, const FoldingMap& f);
/// Rebuilds the map and checks the stored levels match bit for bit.
FoldingMap read_descriptor(std::istream& in);

}  // namespace foldmap
