#pragma once

#include "foldmap/grid.hpp"
#include "foldmap/lagrangian.hpp"

#include <cstdint>
#include <vector>

namespace foldmap {

/// Sum over cells of L(cell centre, mean corner value, D_h u) * h^n, forward
/// differences, fixed summation order.
double energy(const GridFunction& u, const Lagrangian& lagrangian);

/// Same sum with eta taken from `values_from` and D_h from `gradients_from`.
double mixed_energy(const GridFunction& values_from, const GridFunction& gradients_from, const Lagrangian& lagrangian);

/// Derivative of the discrete energy with respect to each node value
/// (value_dim x node_count); boundary columns are zero.
Matrix grad_energy(const GridFunction& u, const Lagrangian& lagrangian);

/// Cell sum of a(x) and l(x) times h^n.
double invariance_deficit_l1(const Grid& grid, const Lagrangian& lagrangian);
double boundary_deficit_l1(const Grid& grid, const Lagrangian& lagrangian);

struct DescentOptions {
  double tolerance = 1e-12;       // relative energy decrease per step
  double grad_tolerance = 1e-10;  // discrete L2 norm of the energy gradient
  int max_iters = 20000;
  int patience = 3;               // consecutive small decreases before stopping
  std::uint64_t seed = 0;
  double initial_jitter = 0.;     // uniform perturbation of interior values
};

struct DescentResult {
  GridFunction u;
  int iterations = 0;
  double energy = 0.;
  double stationarity = 0.;
  bool converged = false;
  std::vector<double> energy_trace;
};

/// Stationarity measure |grad E| / h^(n/2).
double stationarity(const GridFunction& u, const Lagrangian& lagrangian);

/// Gradient descent over interior node values with Barzilai-Borwein trial
/// steps and Armijo backtracking. Boundary values never change. Throws
/// optimization-failed if the energy becomes non-finite or backtracking
/// cannot avoid an increase.
DescentResult descend(const GridFunction& u0, const Lagrangian& lagrangian, const DescentOptions& options);

}  // namespace foldmap
