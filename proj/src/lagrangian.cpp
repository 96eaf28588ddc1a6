#include "foldmap/lagrangian.hpp"

#include "foldmap/error.hpp"

#include <cmath>

namespace foldmap {

Lagrangian::Lagrangian(Builtin b, double q, std::optional<Ball> designated)
    : builtin_(b), q_(q), designated_(std::move(designated)) {}

Lagrangian Lagrangian::power(double q) {
  if (!(q >= 1.)) throw Error(ErrorKind::InvalidInput, "power integrand needs q >= 1");
  return Lagrangian(Builtin::Power, q, std::nullopt);
}

Lagrangian Lagrangian::double_well_gradient() { return Lagrangian(Builtin::DoubleWellGradient, 4., std::nullopt); }

Lagrangian Lagrangian::action(int value_dim) {
  if (value_dim < 1) throw Error(ErrorKind::InvalidInput, "value dimension must be positive");
  return Lagrangian(Builtin::Action, 2., Ball{Point::Zero(value_dim), 1.});
}

Lagrangian Lagrangian::from_name(std::string_view name, double q, int value_dim) {
  if (name == "power") return power(q);
  if (name == "double-well-gradient") return double_well_gradient();
  if (name == "action") return action(value_dim);
  throw Error(ErrorKind::InvalidInput, "unknown lagrangian '" + std::string(name) + "'");
}

std::string_view Lagrangian::name() const {
  switch (builtin_) {
    case Builtin::Power: return "power";
    case Builtin::DoubleWellGradient: return "double-well-gradient";
    case Builtin::Action: return "action";
  }
  return "unknown";
}

LagrangianKind Lagrangian::kind() const {
  return builtin_ == Builtin::Action ? LagrangianKind::Full : LagrangianKind::GradientOnly;
}

double Lagrangian::growth_exponent() const { return q_; }

double Lagrangian::growth_constant() const { return builtin_ == Builtin::Action ? 0.5 : 1.; }

// (|P|^2 - 1)^2 <= |P|^4 + 1
double Lagrangian::growth_offset() const { return builtin_ == Builtin::DoubleWellGradient ? 1. : 0.; }

double Lagrangian::growth_potential(const Point& eta) const {
  if (builtin_ != Builtin::Action) return 0.;
  const double w = eta.squaredNorm() - 1.;
  return w * w;
}

double Lagrangian::value(const Point& /*x*/, const Point& eta, const Matrix& p) const {
  const double s = p.squaredNorm();
  switch (builtin_) {
    case Builtin::Power: return q_ == 2. ? s : std::pow(std::sqrt(s), q_);
    case Builtin::DoubleWellGradient: {
      const double w = s - 1.;
      return w * w;
    }
    case Builtin::Action: {
      const double w = eta.squaredNorm() - 1.;
      return 0.5 * s + w * w;
    }
  }
  return 0.;
}

void Lagrangian::gradient(const Point& /*x*/, const Point& eta, const Matrix& p, Point& d_eta, Matrix& d_p) const {
  const double s = p.squaredNorm();
  d_eta = Point::Zero(eta.size());
  switch (builtin_) {
    case Builtin::Power: {
      if (q_ == 2.) {
        d_p = 2. * p;
      } else {
        const double norm = std::sqrt(s);
        // the subgradient 0 is used at P = 0
        d_p = norm > 0. ? Matrix(q_ * std::pow(norm, q_ - 2.) * p) : Matrix::Zero(p.rows(), p.cols());
      }
      return;
    }
    case Builtin::DoubleWellGradient:
      d_p = 4. * (s - 1.) * p;
      return;
    case Builtin::Action:
      d_p = p;
      d_eta = 4. * (eta.squaredNorm() - 1.) * eta;
      return;
  }
}

double Lagrangian::invariance_deficit(const Point& /*x*/) const { return 0.; }

// W vanishes on the unit sphere and is positive off it, so the boundary of the
// unit ball never exceeds the values outside: l = 0.
double Lagrangian::boundary_deficit(const Point& /*x*/) const { return 0.; }

}  // namespace foldmap
