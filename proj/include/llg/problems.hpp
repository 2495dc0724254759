#pragma once

#include <array>
#include <functional>
#include <string_view>

#include "llg/field.hpp"
#include "llg/schemes.hpp"

namespace llg {

/// Closed-form test solution on [0, 2 pi)^2:
///   m1 = sin(t+x) cos(t+y),  m2 = cos(t+x) cos(t+y),  m3 = sin(t+y).
/// |m| = 1 identically. Every derivative below is analytic.
struct ManufacturedSolution {
  using Vec = std::array<double, 3>;
  static Vec value(double x, double y, double t);
  static Vec time_derivative(double x, double y, double t);
  static Vec d_dx(double x, double y, double t);
  static Vec d_dy(double x, double y, double t);
  static Vec laplacian(double x, double y, double t);
  static double grad_sq(double x, double y, double t);
  /// g = m_t + beta m x Lap m - gamma (Lap m + |grad m|^2 m)
  static Vec forcing(double x, double y, double t, double beta, double gamma);

  static VectorField field(const Grid2D& grid, double t);
};

VectorField manufactured_forcing(double t, const Grid2D& grid, double beta, double gamma);

/// Bubble profile on [-1/2, 1/2)^2 with A = (1 - 2|x|)^4:
///   m = (2 x1 A, 2 x2 A, A^2 - |x|^2) / (A^2 + |x|^2) inside |x| < 1/2,
///   m = (0, 0, -1) outside.
VectorField ic_benchmark(const Grid2D& grid);
std::array<double, 3> benchmark_profile(double x, double y);

/// m = (cos x cos y sin 0.1, cos x cos y cos 0.1, sqrt(1 - cos^2 x cos^2 y)) on [0, 2 pi)^2.
VectorField ic_smooth(const Grid2D& grid);

enum class InitialCondition { Benchmark, Smooth, Manufactured };

InitialCondition parse_ic(std::string_view name);
std::string_view ic_name(InitialCondition ic);

/// Grid on the domain each initial condition is defined on.
Grid2D default_grid(InitialCondition ic, int nx, int ny);

/// Initial data, optional forcing and optional exact solution for one run.
struct Problem {
  InitialCondition ic;
  Grid2D grid;
  SchemeParams params;
  Forcing forcing;
  std::function<VectorField(double)> exact;

  VectorField initial() const;
};

Problem make_problem(InitialCondition ic, const Grid2D& grid, const SchemeParams& params);

}  // namespace llg
