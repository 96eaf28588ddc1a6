#include "foldmap/scalar_example.hpp"

#include "foldmap/error.hpp"

#include <cmath>

namespace foldmap {

ScalarFoldingExample::ScalarFoldingExample(int m) : m_(m) {
  if (m < 0) throw Error(ErrorKind::InvalidInput, "scalar folding index must be nonnegative");
}

double ScalarFoldingExample::operator()(double u) const {
  if (!(u >= 0. && u <= 2.)) throw Error(ErrorKind::InvalidInput, "scalar folding maps live on (0, 2)");
  double f = u <= 1. ? u : 2. - u;
  for (int k = 0; k < m_; ++k) {
    const double width = std::ldexp(1., -k);
    if (f > 0.5 * width) f = width - f;
  }
  return f;
}

int ScalarFoldingExample::slope(double u) const {
  if (!(u >= 0. && u <= 2.)) throw Error(ErrorKind::InvalidInput, "scalar folding maps live on (0, 2)");
  double f = u <= 1. ? u : 2. - u;
  int sign = u <= 1. ? 1 : -1;
  for (int k = 0; k < m_; ++k) {
    const double width = std::ldexp(1., -k);
    if (f > 0.5 * width) {
      f = width - f;
      sign = -sign;
    }
  }
  return sign;
}

double ScalarFoldingExample::seam_spacing() const { return std::ldexp(1., -m_); }

}  // namespace foldmap
