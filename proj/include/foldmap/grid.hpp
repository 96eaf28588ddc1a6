#pragma once

// Uniform grids on the unit interval or unit square, and vector-valued grid
// functions with Dirichlet boundary values.

#include "foldmap/geometry.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace foldmap {

class Grid {
 public:
  /// n in {1, 2} space dimensions, M >= 3 nodes per side.
  Grid(int n, int nodes_per_side);

  int n() const { return n_; }
  int nodes_per_side() const { return m_; }
  double spacing() const { return h_; }
  /// h^n, the measure of one cell.
  double cell_measure() const;

  std::size_t node_count() const;
  std::size_t index(int i, int j = 0) const;
  Point coordinates(std::size_t node) const;
  bool on_boundary(std::size_t node) const;
  const std::vector<std::size_t>& boundary_nodes() const { return boundary_; }
  const std::vector<std::size_t>& interior_nodes() const { return interior_; }

  std::size_t cell_count() const;
  /// Lower-left node of a cell followed by its forward neighbour along each
  /// axis: the forward-difference stencil.
  std::array<std::size_t, 3> stencil(std::size_t cell) const;
  /// All 2^n corners of a cell.
  std::vector<std::size_t> corners(std::size_t cell) const;
  Point cell_center(std::size_t cell) const;

  /// Every pair of nodes adjacent along a grid axis.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

 private:
  int n_;
  int m_;
  double h_;
  std::vector<std::size_t> boundary_;
  std::vector<std::size_t> interior_;
};

class GridFunction {
 public:
  GridFunction(Grid grid, int value_dim);
  GridFunction(Grid grid, Matrix values);  // value_dim x node_count

  const Grid& grid() const { return grid_; }
  int value_dim() const { return static_cast<int>(values_.rows()); }
  const Matrix& values() const { return values_; }
  Matrix& values() { return values_; }
  Point value(std::size_t node) const { return values_.col(static_cast<Eigen::Index>(node)); }
  void set_value(std::size_t node, const Point& v) { values_.col(static_cast<Eigen::Index>(node)) = v; }

  /// Forward-difference gradient D_h u on a cell (value_dim x n).
  Matrix cell_gradient(std::size_t cell) const;
  /// Mean of the cell's corner values.
  Point cell_value(std::size_t cell) const;

 private:
  Grid grid_;
  Matrix values_;
};

/// Distinct values of u over `nodes`, merged within 1e-12. Throws
/// invalid-input for an empty node set.
std::vector<Point> essential_range(const GridFunction& u, const std::vector<std::size_t>& nodes);

/// Boundary trace: the essential range over the boundary nodes.
std::vector<Point> trace(const GridFunction& u);

/// dist(p, S) < eps for a finite cloud S.
bool neighborhood_contains(const std::vector<Point>& cloud, double eps, const Point& p);
/// dist(p, C) < eps, the distance measured with the exact projection.
bool neighborhood_contains(const HPolytope& c, double eps, const Point& p);

}  // namespace foldmap
