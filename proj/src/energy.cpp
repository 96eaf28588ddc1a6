#include "foldmap/energy.hpp"

#include "foldmap/error.hpp"

#include <cmath>
#include <random>

namespace foldmap {

namespace {

void check_dims(const GridFunction& u, const Lagrangian& lagrangian) {
  if (auto ball = lagrangian.designated_set(); ball && ball->center.size() != u.value_dim())
    throw Error(ErrorKind::InvalidInput, "lagrangian and grid function value dimensions differ");
}

}  // namespace

double energy(const GridFunction& u, const Lagrangian& lagrangian) { return mixed_energy(u, u, lagrangian); }

double mixed_energy(const GridFunction& values_from, const GridFunction& gradients_from, const Lagrangian& lagrangian) {
  check_dims(values_from, lagrangian);
  const Grid& g = values_from.grid();
  if (gradients_from.grid().n() != g.n() || gradients_from.grid().nodes_per_side() != g.nodes_per_side() ||
      gradients_from.value_dim() != values_from.value_dim())
    throw Error(ErrorKind::InvalidInput, "grid functions live on different grids");
  double total = 0.;
  for (std::size_t c = 0; c < g.cell_count(); ++c)
    total += lagrangian.value(g.cell_center(c), values_from.cell_value(c), gradients_from.cell_gradient(c));
  return total * g.cell_measure();
}

Matrix grad_energy(const GridFunction& u, const Lagrangian& lagrangian) {
  check_dims(u, lagrangian);
  const Grid& g = u.grid();
  Matrix out = Matrix::Zero(u.value_dim(), static_cast<Eigen::Index>(g.node_count()));
  const double w = g.cell_measure();
  const double inv_h = 1. / g.spacing();
  Point d_eta;
  Matrix d_p;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    lagrangian.gradient(g.cell_center(c), u.cell_value(c), u.cell_gradient(c), d_eta, d_p);
    const auto s = g.stencil(c);
    const auto i0 = static_cast<Eigen::Index>(s[0]);
    out.col(static_cast<Eigen::Index>(s[1])) += w * inv_h * d_p.col(0);
    out.col(i0) -= w * inv_h * d_p.col(0);
    if (g.n() == 2) {
      out.col(static_cast<Eigen::Index>(s[2])) += w * inv_h * d_p.col(1);
      out.col(i0) -= w * inv_h * d_p.col(1);
    }
    const auto corners = g.corners(c);
    const Point share = d_eta * (w / static_cast<double>(corners.size()));
    for (auto k : corners) out.col(static_cast<Eigen::Index>(k)) += share;
  }
  for (auto k : g.boundary_nodes()) out.col(static_cast<Eigen::Index>(k)).setZero();
  return out;
}

double invariance_deficit_l1(const Grid& grid, const Lagrangian& lagrangian) {
  double total = 0.;
  for (std::size_t c = 0; c < grid.cell_count(); ++c) total += lagrangian.invariance_deficit(grid.cell_center(c));
  return total * grid.cell_measure();
}

double boundary_deficit_l1(const Grid& grid, const Lagrangian& lagrangian) {
  double total = 0.;
  for (std::size_t c = 0; c < grid.cell_count(); ++c) total += lagrangian.boundary_deficit(grid.cell_center(c));
  return total * grid.cell_measure();
}

double stationarity(const GridFunction& u, const Lagrangian& lagrangian) {
  return grad_energy(u, lagrangian).norm() / std::sqrt(u.grid().cell_measure());
}

DescentResult descend(const GridFunction& u0, const Lagrangian& lagrangian, const DescentOptions& options) {
  GridFunction u = u0;
  const Grid& g = u.grid();
  const double root_measure = std::sqrt(g.cell_measure());

  if (options.initial_jitter > 0.) {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> jitter(-options.initial_jitter, options.initial_jitter);
    for (auto k : g.interior_nodes())
      for (Eigen::Index a = 0; a < u.values().rows(); ++a) u.values()(a, static_cast<Eigen::Index>(k)) += jitter(rng);
  }

  DescentResult r{u, 0, energy(u, lagrangian), 0., false, {}};
  double e = r.energy;
  if (!std::isfinite(e)) throw Error(ErrorKind::OptimizationFailed, "initial energy is not finite");
  r.energy_trace.push_back(e);

  Matrix grad = grad_energy(u, lagrangian);
  double step = 1e-2;
  int small_steps = 0;
  for (int it = 0; it < options.max_iters; ++it) {
    const double gnorm2 = grad.squaredNorm();
    r.stationarity = std::sqrt(gnorm2) / root_measure;
    if (!std::isfinite(r.stationarity)) throw Error(ErrorKind::OptimizationFailed, "energy gradient is not finite");
    if (r.stationarity <= options.grad_tolerance) {
      r.converged = true;
      break;
    }

    // Armijo backtracking from the current trial step.
    Matrix trial_values;
    double trial_e = e;
    bool accepted = false;
    for (int back = 0; back < 80; ++back) {
      trial_values = u.values() - step * grad;
      trial_e = energy(GridFunction(g, trial_values), lagrangian);
      if (std::isfinite(trial_e) && trial_e <= e - 1e-4 * step * gnorm2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (std::isfinite(trial_e) && trial_e <= e) {
        // no representable decrease left: converged to roundoff
        r.converged = true;
        break;
      }
      throw Error(ErrorKind::OptimizationFailed, "backtracking could not prevent an energy increase");
    }

    const Matrix s = trial_values - u.values();
    u.values() = std::move(trial_values);
    const Matrix new_grad = grad_energy(u, lagrangian);
    const Matrix y = new_grad - grad;
    grad = new_grad;
    ++r.iterations;

    const double decrease = e - trial_e;
    e = trial_e;
    r.energy_trace.push_back(e);

    // Barzilai-Borwein trial step for the next iteration.
    const double sy = (s.array() * y.array()).sum();
    step = sy > 0. ? s.squaredNorm() / sy : 2. * step;

    if (decrease <= options.tolerance * std::max(1., std::abs(e))) {
      if (++small_steps >= options.patience) {
        r.converged = true;
        r.stationarity = grad.norm() / root_measure;
        break;
      }
    } else {
      small_steps = 0;
    }
  }
  r.u = std::move(u);
  r.energy = e;
  if (!r.converged) r.stationarity = grad.norm() / root_measure;
  return r;
}

}  // namespace foldmap
