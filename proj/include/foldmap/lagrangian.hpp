#pragma once

// Built-in integrands L(x, eta, P) for the discretised energies. Each depends
// on the gradient P only through its Frobenius norm, so left-multiplying P by
// an orthogonal matrix leaves it unchanged (invariance deficit a = 0).

#include "foldmap/geometry.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace foldmap {

enum class LagrangianKind {
  GradientOnly,  // L(x, P)
  Full,          // L(x, eta, P)
};

struct Ball {
  Point center;
  double radius = 1.;
};

class Lagrangian {
 public:
  enum class Builtin { Power, DoubleWellGradient, Action };

  /// |P|^q, q >= 1.
  static Lagrangian power(double q);
  /// (|P|^2 - 1)^2.
  static Lagrangian double_well_gradient();
  /// |P|^2 / 2 + (|eta|^2 - 1)^2 with the unit ball in R^N as designated set.
  static Lagrangian action(int value_dim);
  /// "power", "double-well-gradient" or "action".
  static Lagrangian from_name(std::string_view name, double q = 2., int value_dim = 2);

  Builtin builtin() const { return builtin_; }
  std::string_view name() const;
  LagrangianKind kind() const;

  /// Growth data: -b <= L <= C |P|^q + b (+ d(eta) for the full kind).
  double growth_exponent() const;
  double growth_constant() const;
  double growth_offset() const;
  /// d(x, eta) of the full-kind growth bound; zero for gradient-only kinds.
  double growth_potential(const Point& eta) const;

  double value(const Point& x, const Point& eta, const Matrix& p) const;
  /// Partial derivatives with respect to eta and P.
  void gradient(const Point& x, const Point& eta, const Matrix& p, Point& d_eta, Matrix& d_p) const;

  /// a(x): bound on |L(x, eta, P) - L(x, eta, QP)| over orthogonal Q.
  double invariance_deficit(const Point& x) const;
  /// l(x): excess of boundary values of the designated set over outside values.
  double boundary_deficit(const Point& x) const;
  std::optional<Ball> designated_set() const { return designated_; }

 private:
  Lagrangian(Builtin b, double q, std::optional<Ball> designated);

  Builtin builtin_;
  double q_;
  std::optional<Ball> designated_;
};

}  // namespace foldmap
