#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "llg/grid.hpp"

namespace llg {

/// Real values sampled on a Grid2D (physical space, row-major, x fastest).
class ScalarField {
 public:
  explicit ScalarField(Grid2D grid);
  ScalarField(Grid2D grid, std::vector<double> values);

  static ScalarField constant(const Grid2D& grid, double value);

  /// Samples f(x, y) at every grid point.
  template <class F>
  static ScalarField sample(const Grid2D& grid, F&& f) {
    ScalarField out(grid);
    for (int iy = 0; iy < grid.ny(); ++iy) {
      const double y = grid.y(iy);
      for (int ix = 0; ix < grid.nx(); ++ix) out.at(ix, iy) = f(grid.x(ix), y);
    }
    return out;
  }

  const Grid2D& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  double at(int ix, int iy) const { return values_[static_cast<std::size_t>(iy) * grid_.nx() + ix]; }
  double& at(int ix, int iy) { return values_[static_cast<std::size_t>(iy) * grid_.nx() + ix]; }

  bool all_finite() const;
  double max_abs() const;
  double sum() const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s);
  ScalarField& operator*=(const ScalarField& other);

  /// this += a * x
  ScalarField& add_scaled(double a, const ScalarField& x);

 private:
  Grid2D grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
ScalarField operator*(ScalarField a, const ScalarField& b);

/// Throws GridMismatch when the grids differ.
void require_same_grid(const Grid2D& a, const Grid2D& b);

}  // namespace llg
