#pragma once

#include "foldmap/folding.hpp"
#include "foldmap/geometry.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace foldmap {

struct ConvergenceOptions {
  std::vector<int> m_values;
  int j = 2;                 // samples live in jC
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  /// Lateral distance a safe-ray foot keeps from the facet's ridges;
  /// defaults to 0.1 * diam(C).
  std::optional<double> ridge_margin;
};

struct ConvergenceRow {
  int m = 0;
  bool skipped = false;  // m < j: containment is not guaranteed on jC
  double safe_error = 0.;
  double global_error = 0.;
  std::size_t safe_samples = 0;
  std::size_t global_samples = 0;
};

/// Sup-norm distance between F_m and the exact projection over samples of jC:
/// once over safe facet-normal rays (N = 2) and once over uniform samples.
/// The same sample sets are reused for every m.
std::vector<ConvergenceRow> convergence_error(const HPolytope& c, const ConvergenceOptions& options);

struct ContainmentReport {
  int m = 0;
  std::size_t samples = 0;
  double max_violation = 0.;     // largest excess over (1 + 1/m)C, samples of mC
  double max_displacement = 0.;  // largest |F(p) - p| over samples of C
};

ContainmentReport verify_containment(const FoldingMap& f, std::size_t samples, std::uint64_t seed);

struct ZoneReport {
  std::size_t pairs = 0;
  std::size_t samples = 0;
  double max_outer_excess = 0.;  // how far images leave tC
  double max_inner_depth = 0.;   // how far images enter int(C)
};

/// For each consecutive pair (tau, t) of schedule levels, samples
/// tau*C \ int(t*C) and applies the stage at level t.
ZoneReport verify_zones(const FoldingMap& f, std::size_t samples_per_pair, std::uint64_t seed);

struct LipschitzReport {
  std::size_t pairs = 0;
  std::size_t violations = 0;  // ratio above 1 beyond the tolerance
  double worst_excess = 0.;    // max |F(u) - F(v)| - |u - v|
};

LipschitzReport verify_lipschitz(const FoldingMap& f, double scale, std::size_t pairs, std::uint64_t seed,
                                 double tol = 1e-9);

}  // namespace foldmap
