#include "foldmap/experiment.hpp"

#include "foldmap/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace foldmap {

namespace {

Point boundary_value(const Point& x, int value_dim, const BoundarySpec& spec, const std::vector<Point>& freq,
                     const Matrix& amp, const Matrix& phase) {
  const int n = static_cast<int>(x.size());
  if (spec.generator == "circle-map") {
    if (value_dim != 2) throw Error(ErrorKind::InvalidInput, "circle-map boundary data needs value dimension 2");
    const double theta = n == 1 ? 2. * std::numbers::pi * x[0] : std::atan2(x[1] - 0.5, x[0] - 0.5);
    const Point c = spec.center.size() == 2 ? spec.center : Point(Point::Zero(2));
    return c + spec.radius * (Point(2) << std::cos(theta), std::sin(theta)).finished();
  }
  if (spec.generator == "linear") {
    if (spec.slope.rows() != value_dim || spec.slope.cols() != n)
      throw Error(ErrorKind::InvalidInput, "linear boundary slope must be value_dim x n");
    const Point b = spec.offset.size() == value_dim ? spec.offset : Point(Point::Zero(value_dim));
    return spec.slope * x + b;
  }
  if (spec.generator == "constant") {
    return spec.center.size() == value_dim ? spec.center : Point(Point::Zero(value_dim));
  }
  if (spec.generator == "random-lipschitz") {
    Point v = spec.center.size() == value_dim ? spec.center : Point(Point::Zero(value_dim));
    for (int a = 0; a < value_dim; ++a)
      for (int k = 0; k < spec.modes; ++k)
        v[a] += amp(a, k) * std::sin(2. * std::numbers::pi * freq[static_cast<std::size_t>(k)].dot(x) + phase(a, k));
    return v;
  }
  throw Error(ErrorKind::InvalidInput, "unknown boundary generator '" + spec.generator + "'");
}

// Per-node fold of values expressed in C's frame.
struct NodeFolds {
  Matrix images;
  std::vector<BranchTrace> traces;
};

NodeFolds fold_nodes(const FoldingMap& f, const GridFunction& v) {
  NodeFolds out;
  out.images.resize(v.value_dim(), v.values().cols());
  out.traces.reserve(static_cast<std::size_t>(v.values().cols()));
  for (Eigen::Index k = 0; k < v.values().cols(); ++k) {
    auto [image, trace] = f.apply(v.values().col(k));
    out.images.col(k) = image;
    out.traces.push_back(std::move(trace));
  }
  return out;
}

SeamStats accumulate_seams(const GridFunction& u, const GridFunction& v, const std::vector<BranchTrace>& traces,
                           const Lagrangian& lagrangian) {
  const Grid& g = u.grid();
  SeamStats s;
  for (const auto& [a, b] : g.edges())
    if (!traces[a].same_branch(traces[b])) ++s.crossing_edges;
  double sum = 0.;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const auto st = g.stencil(c);
    bool crossing = !traces[st[0]].same_branch(traces[st[1]]);
    if (g.n() == 2) crossing = crossing || !traces[st[0]].same_branch(traces[st[2]]);
    if (!crossing) continue;
    ++s.crossing_cells;
    const Point x = g.cell_center(c);
    const Point eta = u.cell_value(c);
    sum += std::abs(lagrangian.value(x, eta, u.cell_gradient(c)) - lagrangian.value(x, eta, v.cell_gradient(c)));
  }
  s.eps_disc = sum * g.cell_measure();
  return s;
}

InequalityCheck check(std::string name, double lhs, double rhs) {
  const bool ok = lhs <= rhs + kEnergyTolerance * std::max(1., std::abs(rhs));
  return {std::move(name), lhs, rhs, ok};
}

struct FoldOutcome {
  GridFunction vm;  // world frame
  GridFunction u;   // world frame
  Truncation truncation;
  NodeFolds folds;
};

// Shift into C's frame, truncate, fold and shift back. Nodes on the identity
// branch keep their world value bit for bit.
FoldOutcome fold_descent_output(const FoldingMap& f, const GridFunction& v, const Point& translation) {
  GridFunction frame = v;
  for (Eigen::Index k = 0; k < frame.values().cols(); ++k) frame.values().col(k) -= translation;
  Truncation t = truncate(frame, f.m(), f.body());
  NodeFolds folds = fold_nodes(f, t.values);
  GridFunction vm = v;
  GridFunction u = v;
  for (Eigen::Index k = 0; k < v.values().cols(); ++k) {
    const bool clipped = t.values.values().col(k) != frame.values().col(k);
    if (clipped) vm.values().col(k) = t.values.values().col(k) + translation;
    const auto& trace = folds.traces[static_cast<std::size_t>(k)];
    u.values().col(k) = trace.fire_count() == 0 ? vm.values().col(k) : Point(folds.images.col(k) + translation);
  }
  return {std::move(vm), std::move(u), std::move(t), std::move(folds)};
}

void record_descent(ExperimentReport& r, const DescentResult& d) {
  r.descent_iterations = d.iterations;
  r.descent_stationarity = d.stationarity;
  r.descent_converged = d.converged;
}

void record_boundary(ExperimentReport& r, const GridFunction& v, const GridFunction& u) {
  r.boundary_bit_exact = true;
  r.boundary_max_change = 0.;
  for (auto k : v.grid().boundary_nodes()) {
    const auto col = static_cast<Eigen::Index>(k);
    r.boundary_max_change = std::max(r.boundary_max_change, (u.values().col(col) - v.values().col(col)).norm());
    r.boundary_bit_exact = r.boundary_bit_exact && u.values().col(col) == v.values().col(col);
  }
}

DescentResult run_descent(const ExperimentConfig& cfg, const Grid& grid, const Lagrangian& lagrangian) {
  const GridFunction u0 = boundary_data(grid, cfg.value_dim, cfg.boundary);
  DescentOptions opts = cfg.descent;
  opts.seed = cfg.seed;
  opts.initial_jitter = cfg.init_noise;
  return descend(u0, lagrangian, opts);
}

std::vector<Point> outline(const HPolytope& c, const Point& translation) {
  std::vector<Point> out;
  for (const auto& p : c.polygon()) out.push_back(p + translation);
  return out;
}

}  // namespace

std::string ExperimentReport::verdict() const {
  if (status != "completed") return "N/A";
  return pass ? "PASS" : "FAIL";
}

GridFunction boundary_data(const Grid& grid, int value_dim, const BoundarySpec& spec) {
  std::vector<Point> freq;
  Matrix amp, phase;
  if (spec.generator == "random-lipschitz") {
    if (spec.modes < 1) throw Error(ErrorKind::InvalidInput, "random-lipschitz needs at least one mode");
    if (!(spec.lipschitz > 0.)) throw Error(ErrorKind::InvalidInput, "random-lipschitz needs a positive constant");
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(-1., 1.);
    amp.resize(value_dim, spec.modes);
    phase.resize(value_dim, spec.modes);
    for (int k = 0; k < spec.modes; ++k) {
      Point w(grid.n());
      for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = unit(rng);
      freq.push_back(w);
    }
    for (int a = 0; a < value_dim; ++a)
      for (int k = 0; k < spec.modes; ++k) {
        amp(a, k) = unit(rng);
        phase(a, k) = std::numbers::pi * unit(rng);
      }
    // Scale so the Lipschitz bound sum |amp| 2 pi |freq| equals the target.
    double bound2 = 0.;
    for (int a = 0; a < value_dim; ++a) {
      double row = 0.;
      for (int k = 0; k < spec.modes; ++k)
        row += std::abs(amp(a, k)) * 2. * std::numbers::pi * freq[static_cast<std::size_t>(k)].norm();
      bound2 += row * row;
    }
    if (bound2 > 0.) amp *= spec.lipschitz / std::sqrt(bound2);
  }

  GridFunction u(grid, value_dim);
  for (auto k : grid.boundary_nodes())
    u.set_value(k, boundary_value(grid.coordinates(k), value_dim, spec, freq, amp, phase));

  const int m = grid.nodes_per_side();
  if (grid.n() == 1) {
    const Point a = u.value(grid.index(0));
    const Point b = u.value(grid.index(m - 1));
    for (auto k : grid.interior_nodes()) {
      const double x = grid.coordinates(k)[0];
      u.set_value(k, (1. - x) * a + x * b);
    }
    return u;
  }
  auto at = [&](int i, int j) { return u.value(grid.index(i, j)); };
  for (auto k : grid.interior_nodes()) {
    const Point xy = grid.coordinates(k);
    const int i = static_cast<int>(k % static_cast<std::size_t>(m));
    const int j = static_cast<int>(k / static_cast<std::size_t>(m));
    const double x = xy[0], y = xy[1];
    const Point edges = (1. - x) * at(0, j) + x * at(m - 1, j) + (1. - y) * at(i, 0) + y * at(i, m - 1);
    const Point corners = (1. - x) * (1. - y) * at(0, 0) + x * (1. - y) * at(m - 1, 0) +
                          (1. - x) * y * at(0, m - 1) + x * y * at(m - 1, m - 1);
    u.set_value(k, edges - corners);
  }
  return u;
}

Truncation truncate(const GridFunction& v, int m, const HPolytope& c) {
  if (m < 1) throw Error(ErrorKind::InvalidInput, "truncation needs m >= 1");
  const auto [xi_min, xi_max] = xi_extremes(c);
  const double radius = std::floor(m * xi_min);
  Truncation t{v, radius, 0};
  for (Eigen::Index k = 0; k < v.values().cols(); ++k) {
    const double norm = v.values().col(k).norm();
    if (norm <= radius) continue;
    if (v.grid().on_boundary(static_cast<std::size_t>(k))) {
      std::ostringstream msg;
      msg << "boundary value of norm " << norm << " exceeds the truncation radius " << radius
          << "; boundary values must stay unchanged";
      throw Error(ErrorKind::InvalidInput, msg.str());
    }
    t.values.values().col(k) *= radius / norm;
    ++t.clipped;
  }
  return t;
}

SeamStats seam_stats(const FoldingMap& f, const GridFunction& v, const Lagrangian& lagrangian, const Point& translation) {
  const NodeFolds folds = fold_nodes(f, v);
  GridFunction u(v.grid(), folds.images);
  for (Eigen::Index k = 0; k < u.values().cols(); ++k) u.values().col(k) += translation;
  return accumulate_seams(u, v, folds.traces, lagrangian);
}

int circumscribed_sides(double radius, double slack) {
  if (!(radius > 0.) || !(slack > 0.)) throw Error(ErrorKind::InvalidInput, "ball radius and slack must be positive");
  for (int n = 8; n <= 1 << 20; ++n)
    if (radius / std::cos(std::numbers::pi / n) < radius + slack) return n;
  throw Error(ErrorKind::ConstructionFailed, "no circumscribed polygon fits the slack");
}

// ---------------------------------------------------------------------------

ExperimentReport pipeline_i(const ExperimentConfig& cfg) {
  ExperimentReport r;
  r.experiment = "convex-hull-comparison";
  r.config = cfg;
  if (!(cfg.alpha > 0.)) throw Error(ErrorKind::InvalidInput, "alpha must be positive");
  const Lagrangian lagrangian = Lagrangian::from_name(cfg.lagrangian, cfg.q, cfg.value_dim);
  if (lagrangian.kind() != LagrangianKind::GradientOnly)
    throw Error(ErrorKind::InvalidInput, "the convex-hull comparison needs a gradient-only lagrangian");
  if (cfg.value_dim != 2) throw Error(ErrorKind::InvalidInput, "the convex-hull comparison needs value dimension 2");

  const Grid grid(cfg.n, cfg.nodes_per_side);
  const DescentResult d = run_descent(cfg, grid, lagrangian);
  record_descent(r, d);
  const GridFunction& v = d.u;
  r.v = v;
  r.energy_v = energy(v, lagrangian);

  const auto boundary_trace = trace(v);
  r.trace_points = boundary_trace.size();
  std::optional<OffsetHull> oh;
  try {
    oh = offset_hull(boundary_trace, cfg.alpha);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateHull) throw;
    r.status = "degenerate-hull";
    r.message = std::string("boundary trace has no two-dimensional convex hull (") + e.what() + ")";
    return r;
  }
  const HPolytope& c = oh->body;
  r.translation = oh->translation;
  r.hull_vertices = oh->hull_vertices.size();
  r.body_facets = c.size();
  std::tie(r.xi_min, r.xi_max) = xi_extremes(c);

  // Smallest m whose (1 + 1/m)-dilate sits inside the alpha-neighbourhood of
  // the hull (checking vertices suffices, the distance is convex) and whose
  // truncation radius leaves every boundary value alone.
  double reach = 0.;
  for (const auto& p : boundary_trace) reach = std::max(reach, (p - oh->translation).norm());
  for (int m = 2; m <= cfg.m_cap && r.m == 0; ++m) {
    if (std::floor(m * r.xi_min) < reach) continue;
    const HPolytope grown = dilate(c, 1. + 1. / m);
    const bool inside = std::all_of(grown.vertices().begin(), grown.vertices().end(), [&](const Point& p) {
      return distance(oh->hull, p + oh->translation) < cfg.alpha;
    });
    if (inside) r.m = m;
  }
  if (r.m == 0) {
    std::ostringstream msg;
    msg << "no m <= " << cfg.m_cap
        << " keeps (1 + 1/m)C inside the alpha-neighbourhood of the hull with R(m) covering the boundary values";
    throw Error(ErrorKind::ConstructionFailed, msg.str());
  }

  const FoldingMap f = FoldingMap::build(c, r.m);
  r.stop_index = f.schedule().stop_index;
  r.levels = f.schedule().levels;
  FoldOutcome out = fold_descent_output(f, v, oh->translation);
  r.truncation_radius = out.truncation.radius;
  r.clipped_nodes = out.truncation.clipped;
  r.energy_vm = energy(out.vm, lagrangian);
  r.energy_u = energy(out.u, lagrangian);
  r.deficit_a = invariance_deficit_l1(grid, lagrangian);
  r.seams = accumulate_seams(out.u, out.vm, out.folds.traces, lagrangian);

  r.containment_target = "alpha-neighbourhood of the convex hull of the boundary trace";
  for (auto k : grid.interior_nodes()) {
    const double dist = distance(oh->hull, out.u.value(k));
    r.containment_max_distance = std::max(r.containment_max_distance, dist);
    r.containment_violation = std::max(r.containment_violation, dist - cfg.alpha);
  }
  record_boundary(r, v, out.u);

  r.inequalities.push_back(check("fold-step", r.energy_u, r.energy_vm + r.deficit_a + r.seams.eps_disc));
  r.inequalities.push_back(check("truncation-step", r.energy_vm, r.energy_v + cfg.alpha / 2.));
  r.inequalities.push_back(check("total", r.energy_u, r.energy_v + cfg.alpha / 2. + r.deficit_a + r.seams.eps_disc));
  r.pass = r.containment_violation <= kContainmentTolerance && r.boundary_bit_exact &&
           std::all_of(r.inequalities.begin(), r.inequalities.end(), [](const InequalityCheck& i) { return i.pass; });

  r.u = std::move(out.u);
  r.target_outline = oh->hull_vertices;
  r.body_outline = outline(c, oh->translation);
  return r;
}

ExperimentReport pipeline_ii(const ExperimentConfig& cfg) {
  ExperimentReport r;
  r.experiment = "designated-set-comparison";
  r.config = cfg;
  if (!(cfg.alpha > 0.)) throw Error(ErrorKind::InvalidInput, "alpha must be positive");
  const Lagrangian lagrangian = Lagrangian::from_name(cfg.lagrangian, cfg.q, cfg.value_dim);
  const auto ball = lagrangian.designated_set();
  if (lagrangian.kind() != LagrangianKind::Full || !ball)
    throw Error(ErrorKind::InvalidInput, "the designated-set comparison needs a full lagrangian with a designated set");
  if (cfg.value_dim != 2) throw Error(ErrorKind::InvalidInput, "the designated-set comparison needs value dimension 2");

  const Grid grid(cfg.n, cfg.nodes_per_side);

  // The boundary trace must sit strictly inside the designated set.
  const GridFunction g = boundary_data(grid, cfg.value_dim, cfg.boundary);
  double outermost = 0.;
  for (auto k : grid.boundary_nodes()) outermost = std::max(outermost, (g.value(k) - ball->center).norm());
  if (outermost > ball->radius - cfg.alpha / 8.) {
    std::ostringstream msg;
    msg << "boundary values reach distance " << outermost << " from the centre of the designated ball of radius "
        << ball->radius << "; they must stay within radius - alpha/8 = " << ball->radius - cfg.alpha / 8.;
    throw Error(ErrorKind::PreconditionViolated, msg.str());
  }

  const DescentResult d = run_descent(cfg, grid, lagrangian);
  record_descent(r, d);
  const GridFunction& v = d.u;
  r.v = v;
  r.energy_v = energy(v, lagrangian);
  r.trace_points = trace(v).size();

  const int sides = circumscribed_sides(ball->radius, cfg.alpha / 2.);
  const HPolytope c = obtusify(shapes::regular_polygon(sides, ball->radius), cfg.alpha / 8.);
  const double circumradius = ball->radius / std::cos(std::numbers::pi / sides);
  r.translation = ball->center;
  r.hull_vertices = 0;
  r.body_facets = c.size();
  std::tie(r.xi_min, r.xi_max) = xi_extremes(c);

  for (int m = 2; m <= cfg.m_cap && r.m == 0; ++m)
    if ((1. + 1. / m) * circumradius < ball->radius + cfg.alpha && std::floor(m * r.xi_min) >= outermost) r.m = m;
  if (r.m == 0) {
    std::ostringstream msg;
    msg << "no m <= " << cfg.m_cap
        << " keeps (1 + 1/m)C inside the alpha-neighbourhood of the designated set with R(m) covering the boundary values";
    throw Error(ErrorKind::ConstructionFailed, msg.str());
  }

  const FoldingMap f = FoldingMap::build(c, r.m);
  r.stop_index = f.schedule().stop_index;
  r.levels = f.schedule().levels;
  FoldOutcome out = fold_descent_output(f, v, ball->center);
  r.truncation_radius = out.truncation.radius;
  r.clipped_nodes = out.truncation.clipped;
  r.energy_vm = energy(out.vm, lagrangian);
  r.energy_u = energy(out.u, lagrangian);
  r.energy_mixed = mixed_energy(out.u, out.vm, lagrangian);
  r.deficit_a = invariance_deficit_l1(grid, lagrangian);
  r.deficit_l = boundary_deficit_l1(grid, lagrangian);
  r.seams = accumulate_seams(out.u, out.vm, out.folds.traces, lagrangian);

  r.containment_target = "alpha-neighbourhood of the designated ball";
  for (auto k : grid.interior_nodes()) {
    const double dist = std::max(0., (out.u.value(k) - ball->center).norm() - ball->radius);
    r.containment_max_distance = std::max(r.containment_max_distance, dist);
    r.containment_violation = std::max(r.containment_violation, dist - cfg.alpha);
  }
  record_boundary(r, v, out.u);

  r.inequalities.push_back(check("fold-step", r.energy_u, *r.energy_mixed + r.deficit_a + r.seams.eps_disc));
  r.inequalities.push_back(
      check("total", r.energy_u, r.energy_v + cfg.alpha / 2. + r.deficit_a + r.deficit_l + r.seams.eps_disc));
  r.pass = r.containment_violation <= kContainmentTolerance && r.boundary_bit_exact &&
           std::all_of(r.inequalities.begin(), r.inequalities.end(), [](const InequalityCheck& i) { return i.pass; });

  r.u = std::move(out.u);
  for (int i = 0; i < 128; ++i) {
    const double a = 2. * std::numbers::pi * i / 128.;
    r.target_outline.push_back(ball->center + ball->radius * (Point(2) << std::cos(a), std::sin(a)).finished());
  }
  r.body_outline = outline(c, ball->center);
  return r;
}

}  // namespace foldmap
