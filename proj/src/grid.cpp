#include "foldmap/grid.hpp"

#include "foldmap/error.hpp"

#include <cmath>
#include <limits>

namespace foldmap {

Grid::Grid(int n, int nodes_per_side) : n_(n), m_(nodes_per_side) {
  if (n != 1 && n != 2) throw Error(ErrorKind::InvalidInput, "grids support n = 1 or n = 2");
  if (nodes_per_side < 3) throw Error(ErrorKind::InvalidInput, "grids need at least 3 nodes per side");
  h_ = 1. / (m_ - 1);
  for (std::size_t k = 0; k < node_count(); ++k) (on_boundary(k) ? boundary_ : interior_).push_back(k);
}

double Grid::cell_measure() const { return n_ == 1 ? h_ : h_ * h_; }

std::size_t Grid::node_count() const {
  const auto m = static_cast<std::size_t>(m_);
  return n_ == 1 ? m : m * m;
}

std::size_t Grid::index(int i, int j) const {
  return static_cast<std::size_t>(i) + static_cast<std::size_t>(m_) * static_cast<std::size_t>(j);
}

Point Grid::coordinates(std::size_t node) const {
  const auto m = static_cast<std::size_t>(m_);
  Point x(n_);
  x[0] = static_cast<double>(node % m) * h_;
  if (n_ == 2) x[1] = static_cast<double>(node / m) * h_;
  return x;
}

bool Grid::on_boundary(std::size_t node) const {
  const auto m = static_cast<std::size_t>(m_);
  const std::size_t i = node % m;
  if (i == 0 || i == m - 1) return true;
  if (n_ == 1) return false;
  const std::size_t j = node / m;
  return j == 0 || j == m - 1;
}

std::size_t Grid::cell_count() const {
  const auto c = static_cast<std::size_t>(m_ - 1);
  return n_ == 1 ? c : c * c;
}

std::array<std::size_t, 3> Grid::stencil(std::size_t cell) const {
  const auto c = static_cast<std::size_t>(m_ - 1);
  const auto m = static_cast<std::size_t>(m_);
  const std::size_t i = cell % c;
  const std::size_t j = n_ == 1 ? 0 : cell / c;
  const std::size_t origin = i + m * j;
  return {origin, origin + 1, n_ == 2 ? origin + m : origin};
}

std::vector<std::size_t> Grid::corners(std::size_t cell) const {
  const auto s = stencil(cell);
  if (n_ == 1) return {s[0], s[1]};
  return {s[0], s[1], s[2], s[2] + 1};
}

Point Grid::cell_center(std::size_t cell) const {
  const auto c = static_cast<std::size_t>(m_ - 1);
  Point x(n_);
  x[0] = (static_cast<double>(cell % c) + 0.5) * h_;
  if (n_ == 2) x[1] = (static_cast<double>(cell / c) + 0.5) * h_;
  return x;
}

std::vector<std::pair<std::size_t, std::size_t>> Grid::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const int rows = n_ == 1 ? 1 : m_;
  for (int j = 0; j < rows; ++j)
    for (int i = 0; i + 1 < m_; ++i) out.emplace_back(index(i, j), index(i + 1, j));
  if (n_ == 2)
    for (int j = 0; j + 1 < m_; ++j)
      for (int i = 0; i < m_; ++i) out.emplace_back(index(i, j), index(i, j + 1));
  return out;
}

// ---------------------------------------------------------------------------

GridFunction::GridFunction(Grid grid, int value_dim)
    : grid_(std::move(grid)), values_(Matrix::Zero(value_dim, static_cast<Eigen::Index>(grid_.node_count()))) {
  if (value_dim < 1) throw Error(ErrorKind::InvalidInput, "grid functions need a positive value dimension");
}

GridFunction::GridFunction(Grid grid, Matrix values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() != static_cast<Eigen::Index>(grid_.node_count()))
    throw Error(ErrorKind::InvalidInput, "grid function values do not match the grid");
  if (!values_.allFinite()) throw Error(ErrorKind::InvalidInput, "grid function values must be finite");
}

Matrix GridFunction::cell_gradient(std::size_t cell) const {
  const auto s = grid_.stencil(cell);
  const double inv_h = 1. / grid_.spacing();
  Matrix p(values_.rows(), grid_.n());
  p.col(0) = (values_.col(static_cast<Eigen::Index>(s[1])) - values_.col(static_cast<Eigen::Index>(s[0]))) * inv_h;
  if (grid_.n() == 2)
    p.col(1) = (values_.col(static_cast<Eigen::Index>(s[2])) - values_.col(static_cast<Eigen::Index>(s[0]))) * inv_h;
  return p;
}

Point GridFunction::cell_value(std::size_t cell) const {
  const auto nodes = grid_.corners(cell);
  Point v = Point::Zero(values_.rows());
  for (auto k : nodes) v += values_.col(static_cast<Eigen::Index>(k));
  return v / static_cast<double>(nodes.size());
}

// ---------------------------------------------------------------------------

std::vector<Point> essential_range(const GridFunction& u, const std::vector<std::size_t>& nodes) {
  if (nodes.empty()) throw Error(ErrorKind::InvalidInput, "essential range of an empty node set");
  std::vector<Point> out;
  for (auto k : nodes) {
    if (k >= u.grid().node_count()) throw Error(ErrorKind::InvalidInput, "node index out of range");
    const Point v = u.value(k);
    bool seen = false;
    for (const auto& w : out) {
      if ((w - v).norm() <= 1e-12) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(v);
  }
  return out;
}

std::vector<Point> trace(const GridFunction& u) { return essential_range(u, u.grid().boundary_nodes()); }

bool neighborhood_contains(const std::vector<Point>& cloud, double eps, const Point& p) {
  if (eps < 0.) throw Error(ErrorKind::InvalidInput, "neighbourhood radius must be nonnegative");
  // eps = 0 degenerates to membership
  for (const auto& s : cloud) {
    if (eps == 0. ? s == p : (s - p).norm() < eps) return true;
  }
  return false;
}

bool neighborhood_contains(const HPolytope& c, double eps, const Point& p) {
  if (eps < 0.) throw Error(ErrorKind::InvalidInput, "neighbourhood radius must be nonnegative");
  const double d = distance(c, p);
  return d < eps || (eps == 0. && d == 0.);
}

}  // namespace foldmap
