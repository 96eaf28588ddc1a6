#include "foldmap/convergence.hpp"

#include "foldmap/error.hpp"
#include "foldmap/sampling.hpp"

#include <algorithm>
#include <limits>

namespace foldmap {

std::vector<ConvergenceRow> convergence_error(const HPolytope& c, const ConvergenceOptions& options) {
  if (options.j < 2) throw Error(ErrorKind::InvalidInput, "convergence study needs j >= 2");
  if (options.samples < 100) throw Error(ErrorKind::InvalidInput, "convergence study needs at least 100 samples");

  Rng rng(options.seed);
  const HPolytope outer = dilate(c, options.j);
  const std::vector<Point> uniform = sample_uniform(outer, options.samples, rng);
  std::vector<RaySample> rays;
  if (c.dim() == 2) {
    const double margin = options.ridge_margin.value_or(0.1 * c.diameter());
    rays = sample_safe_rays(c, options.j, margin, options.samples, rng);
  }
  std::vector<Point> uniform_projection;
  uniform_projection.reserve(uniform.size());
  for (const auto& p : uniform) uniform_projection.push_back(project(c, p));
  std::vector<Point> ray_projection;
  ray_projection.reserve(rays.size());
  for (const auto& r : rays) ray_projection.push_back(project(c, r.point));

  std::vector<ConvergenceRow> rows;
  for (int m : options.m_values) {
    ConvergenceRow row;
    row.m = m;
    if (m < options.j) {
      row.skipped = true;
      rows.push_back(row);
      continue;
    }
    const FoldingMap f = FoldingMap::build(c, m);
    for (std::size_t i = 0; i < uniform.size(); ++i)
      row.global_error = std::max(row.global_error, (f(uniform[i]) - uniform_projection[i]).norm());
    for (std::size_t i = 0; i < rays.size(); ++i)
      row.safe_error = std::max(row.safe_error, (f(rays[i].point) - ray_projection[i]).norm());
    row.global_samples = uniform.size();
    row.safe_samples = rays.size();
    rows.push_back(row);
  }
  return rows;
}

ContainmentReport verify_containment(const FoldingMap& f, std::size_t samples, std::uint64_t seed) {
  if (samples < 100) throw Error(ErrorKind::InvalidInput, "containment check needs at least 100 samples");
  const HPolytope& c = f.body();
  const int m = f.m();
  Rng rng(seed);
  ContainmentReport r;
  r.m = m;
  r.samples = samples;
  const HPolytope target = dilate(c, 1. + 1. / m);
  for (const auto& p : sample_uniform(dilate(c, m), samples, rng))
    r.max_violation = std::max(r.max_violation, violation(target, f(p)));
  for (const auto& p : sample_uniform(c, samples, rng))
    r.max_displacement = std::max(r.max_displacement, (f(p) - p).norm());
  return r;
}

ZoneReport verify_zones(const FoldingMap& f, std::size_t samples_per_pair, std::uint64_t seed) {
  const HPolytope& c = f.body();
  const auto& levels = f.schedule().levels;
  Rng rng(seed);
  ZoneReport r;
  for (std::size_t k = 1; k < levels.size(); ++k) {
    const double tau = levels[k - 1];
    const double t = levels[k];
    const HPolytope inner = dilate(c, t);
    const StageMap& stage = f.stages()[k - 1];
    for (const auto& p : sample_shell(dilate(c, tau), inner, samples_per_pair, rng)) {
      const Point y = stage.apply(p);
      r.max_outer_excess = std::max(r.max_outer_excess, violation(inner, y));
      // depth inside int(C): how negative the largest excess is
      double largest = -std::numeric_limits<double>::infinity();
      for (const auto& h : c.halfspaces()) largest = std::max(largest, h.excess(y));
      r.max_inner_depth = std::max(r.max_inner_depth, -largest);
    }
    ++r.pairs;
    r.samples += samples_per_pair;
  }
  return r;
}

LipschitzReport verify_lipschitz(const FoldingMap& f, double scale, std::size_t pairs, std::uint64_t seed, double tol) {
  Rng rng(seed);
  const HPolytope region = dilate(f.body(), scale);
  const auto a = sample_uniform(region, pairs, rng);
  const auto b = sample_uniform(region, pairs, rng);
  LipschitzReport r;
  r.pairs = pairs;
  r.worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pairs; ++i) {
    const double excess = (f(a[i]) - f(b[i])).norm() - (a[i] - b[i]).norm();
    r.worst_excess = std::max(r.worst_excess, excess);
    if (excess > tol) ++r.violations;
  }
  return r;
}

}  // namespace foldmap
