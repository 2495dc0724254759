#pragma once

#include <vector>

namespace llg {

/// Coefficients of the k-th order BDF predictor-corrector family, k = 1, 2, 3.
///
///   alpha        leading coefficient of the new level
///   a_weights    A_k(m^n)       over (m^n, m^{n-1}, m^{n-2})
///   b_weights    B_{k-1}(f^n)   over (f^n, f^{n-1}); empty for k = 1
///   bext_weights B_k(f^n)       over (f^n, f^{n-1}, f^{n-2})
struct BdfTable {
  int k;
  double alpha;
  std::vector<double> a_weights;
  std::vector<double> b_weights;
  std::vector<double> bext_weights;

  /// Throws InvalidArgument for k outside 1..3.
  static const BdfTable& of(int k);
};

}  // namespace llg
