#pragma once

namespace foldmap {

/// Scalar folding maps on (0, 2) approximating the projection onto {0}:
///   F_0(u) = u on (0, 1], 2 - u on (1, 2)
///   F_{k+1} = F_k where F_k <= 2^-(k+1), 2^-k - F_k elsewhere.
/// Ties take the identity branch.
class ScalarFoldingExample {
 public:
  explicit ScalarFoldingExample(int m);

  int m() const { return m_; }
  double operator()(double u) const;
  /// +1 or -1 on the branch containing u.
  int slope(double u) const;
  /// Spacing of the seams of F_m (they sit on multiples of it).
  double seam_spacing() const;

 private:
  int m_;
};

}  // namespace foldmap
