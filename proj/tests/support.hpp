#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "llg/field.hpp"
#include "llg/grid.hpp"

namespace llg::test {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline Grid2D periodic_grid(int n) { return Grid2D::build(n, n, kTwoPi, kTwoPi); }

inline double max_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_diff(const VectorField& a, const VectorField& b) {
  double m = 0.0;
  for (int d = 0; d < 3; ++d) m = std::max(m, max_diff(a[d], b[d]));
  return m;
}

/// Smooth unit field built from a few random low modes, seeded.
inline VectorField random_unit_field(const Grid2D& g, std::uint64_t seed, int modes = 3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double c[3][4][4];
  for (auto& comp : c)
    for (auto& row : comp)
      for (double& v : row) v = u(rng);
  VectorField m = VectorField::sample(g, [&](double x, double y) {
    std::array<double, 3> v{0.3, -0.2, 0.9};
    for (int d = 0; d < 3; ++d)
      for (int p = 1; p <= modes; ++p)
        for (int q = 0; q < 4; ++q) {
          const double a = 0.08 * c[d][p][q] / (p * p);
          v[d] += q % 2 ? a * std::sin(p * x + q * y) : a * std::cos(q * x - p * y);
        }
    return v;
  });
  return normalize_pointwise(m);
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("llg_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace llg::test
