#pragma once

// Grid-level comparison experiments: take a descent output v, fold it back
// into a target convex set with a folding map, and check that containment
// and the energy inequalities hold for u = F_m(v^m).

#include "foldmap/energy.hpp"
#include "foldmap/folding.hpp"
#include "foldmap/grid.hpp"
#include "foldmap/hull.hpp"
#include "foldmap/lagrangian.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace foldmap {

struct BoundarySpec {
  std::string generator = "circle-map";  // circle-map | linear | random-lipschitz | constant
  double radius = 1.;                    // circle-map
  Point center;                          // circle-map centre, constant value
  Matrix slope;                          // linear: value_dim x n
  Point offset;                          // linear: value_dim
  double lipschitz = 1.;                 // random-lipschitz
  int modes = 3;                         // random-lipschitz
  std::uint64_t seed = 0;                // random-lipschitz
};

struct ExperimentConfig {
  int n = 2;
  int nodes_per_side = 33;
  int value_dim = 2;
  std::string lagrangian = "power";
  double q = 2.;
  BoundarySpec boundary;
  double alpha = 0.1;
  int m_cap = 64;
  DescentOptions descent;
  double init_noise = 0.;
  std::uint64_t seed = 0;
};

/// Boundary data evaluated at every node; interior nodes get the transfinite
/// (Coons) interpolation of the boundary values.
GridFunction boundary_data(const Grid& grid, int value_dim, const BoundarySpec& spec);

struct Truncation {
  GridFunction values;
  double radius = 0.;       // R(m)
  std::size_t clipped = 0;  // nodes scaled down to radius R(m)
};

/// Radial truncation to the ball of radius R(m) = floor(m * xi_min), the
/// largest integer radius whose ball sits inside mC. Values are expressed in
/// C's frame. Throws invalid-input if a boundary value would be clipped.
Truncation truncate(const GridFunction& v, int m, const HPolytope& c);

struct SeamStats {
  std::size_t crossing_edges = 0;  // grid edges whose endpoints take different branches
  std::size_t crossing_cells = 0;  // cells whose difference stencil crosses a seam
  double eps_disc = 0.;
};

/// Folds v (C's frame) node by node and bounds the discretisation error of
/// the identity |DF Dv| = |Dv|: sum over crossing cells of
/// |L(x, eta_u, D_h u) - L(x, eta_u, D_h v)| h^n, with eta_u = mean of u + translation.
SeamStats seam_stats(const FoldingMap& f, const GridFunction& v, const Lagrangian& lagrangian, const Point& translation);

struct InequalityCheck {
  std::string name;
  double lhs = 0.;
  double rhs = 0.;
  bool pass = false;
};

inline constexpr double kContainmentTolerance = 1e-9;
inline constexpr double kEnergyTolerance = 1e-9;

struct ExperimentReport {
  std::string experiment;
  std::string status = "completed";  // completed | degenerate-hull
  std::string message;
  ExperimentConfig config;

  int m = 0;
  int stop_index = 0;
  std::vector<double> levels;

  int descent_iterations = 0;
  double descent_stationarity = 0.;
  bool descent_converged = false;

  std::size_t trace_points = 0;
  std::size_t hull_vertices = 0;
  std::size_t body_facets = 0;
  Point translation;
  double xi_min = 0.;
  double xi_max = 0.;

  double truncation_radius = 0.;
  std::size_t clipped_nodes = 0;

  double energy_v = 0.;
  double energy_vm = 0.;
  double energy_u = 0.;
  std::optional<double> energy_mixed;  // L(x, eta_u, D_h v^m), full kind only
  double deficit_a = 0.;
  double deficit_l = 0.;

  SeamStats seams;

  std::string containment_target;
  double containment_violation = 0.;
  double containment_max_distance = 0.;

  double boundary_max_change = 0.;
  bool boundary_bit_exact = false;

  std::vector<InequalityCheck> inequalities;
  bool pass = false;

  std::optional<GridFunction> v;
  std::optional<GridFunction> u;
  std::vector<Point> target_outline;  // world frame polygon(s) for figures
  std::vector<Point> body_outline;

  std::string verdict() const;
};

/// Convex-hull comparison for a gradient-only integrand. A degenerate
/// boundary trace yields status "degenerate-hull" rather than an exception.
ExperimentReport pipeline_i(const ExperimentConfig& config);

/// Designated-set comparison for a full integrand with a designated ball.
/// Throws precondition-violated unless the boundary trace stays alpha/8
/// inside the ball.
ExperimentReport pipeline_ii(const ExperimentConfig& config);

/// Smallest n >= 8 whose regular n-gon circumscribing the ball stays inside
/// the ball's (slack)-neighbourhood.
int circumscribed_sides(double radius, double slack);

}  // namespace foldmap
