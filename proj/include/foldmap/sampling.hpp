#pragma once

#include "foldmap/geometry.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace foldmap {

using Rng = std::mt19937_64;

/// Uniform samples of C by rejection from its bounding box (N <= 3).
std::vector<Point> sample_uniform(const HPolytope& c, std::size_t count, Rng& rng);

/// Uniform samples of outer \ int(inner).
std::vector<Point> sample_shell(const HPolytope& outer, const HPolytope& inner, std::size_t count, Rng& rng);

/// A point on the outward normal ray of one facet, together with the facet
/// foot point it projects to.
struct RaySample {
  Point point;
  Point foot;
  std::size_t facet = 0;
};

/// Samples of jC lying on outward facet-normal rays whose foot stays at least
/// `margin` away from the facet's ridges (N = 2). Facets shorter than
/// 2 * margin contribute nothing; returns empty if no facet qualifies.
std::vector<RaySample> sample_safe_rays(const HPolytope& c, double j, double margin, std::size_t count, Rng& rng);

}  // namespace foldmap
