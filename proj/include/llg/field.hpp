#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "llg/scalar_field.hpp"

namespace llg {

/// Three-component field (m1, m2, m3) on one grid.
struct VectorField {
  std::array<ScalarField, 3> c;

  explicit VectorField(const Grid2D& grid) : c{ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}
  VectorField(ScalarField m1, ScalarField m2, ScalarField m3);

  static VectorField constant(const Grid2D& grid, double v1, double v2, double v3);

  /// Samples f(x, y) -> std::array<double, 3> at every grid point.
  template <class F>
  static VectorField sample(const Grid2D& grid, F&& f) {
    VectorField out(grid);
    for (int iy = 0; iy < grid.ny(); ++iy) {
      const double y = grid.y(iy);
      for (int ix = 0; ix < grid.nx(); ++ix) {
        const std::array<double, 3> v = f(grid.x(ix), y);
        for (int d = 0; d < 3; ++d) out.c[d].at(ix, iy) = v[d];
      }
    }
    return out;
  }

  const Grid2D& grid() const { return c[0].grid(); }
  std::size_t size() const { return c[0].size(); }
  ScalarField& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  const ScalarField& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  bool all_finite() const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s);
  /// this += a * x
  VectorField& add_scaled(double a, const VectorField& x);
  /// Componentwise multiplication by a scalar field.
  VectorField& scale_by(const ScalarField& s);
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);
/// s(x) * v(x) pointwise.
VectorField operator*(const ScalarField& s, VectorField v);

VectorField cross(const VectorField& a, const VectorField& b);
ScalarField dot(const VectorField& a, const VectorField& b);
ScalarField pointwise_norm(const VectorField& m);

/// m / |m| pointwise. Throws DegenerateError naming the first zero-length point
/// and InstabilityError on non-finite input.
VectorField normalize_pointwise(const VectorField& m);

VectorField laplacian(const VectorField& m);

/// Pointwise sum over components of |grad m_i|^2.
ScalarField grad_norm_sq(const VectorField& m);

/// 1/2 * integral of |grad m|^2, rectangle rule with spectral gradients.
double energy(const VectorField& m);
/// Same integral from Parseval's identity, summed over Fourier modes.
double energy_spectral(const VectorField& m);
/// Rectangle-rule integral of |m x Lap m|^2.
double dissipation(const VectorField& m);
/// Rectangle-rule integral of a scalar field.
double integrate(const ScalarField& f);

/// Mean over the three components of the max-abs pointwise difference.
double avg_linf_error(const VectorField& m, const VectorField& ref);

struct LengthRange {
  double min;
  double max;
};
LengthRange length_deviation(const VectorField& m);

/// max over the grid of sqrt(|grad m|^2).
double grad_inf(const VectorField& m);

/// Status bits carried by a RunRecord.
enum RecordFlag : std::uint32_t {
  kFlagNone = 0,
  kFlagNan = 1u << 0,          // non-finite values in the new state
  kFlagBootstrap = 1u << 1,    // reduced-order startup step
  kFlagDtMinForced = 1u << 2,  // accepted at dt_min with |xi| above tolerance
  kFlagSecantFailed = 1u << 3,
  kFlagTruncated = 1u << 4,    // final step shortened to land on t_end
};

std::string flags_to_string(std::uint32_t flags);
std::uint32_t flags_from_string(const std::string& s);

/// Per-step diagnostics row.
struct RunRecord {
  double t = 0.0;
  double energy = 0.0;
  double dissipation = 0.0;
  double xi = 0.0;
  int secant_iters = 0;
  double min_len = 1.0;
  double max_len = 1.0;
  double grad_inf = 0.0;
  double dt = 0.0;
  std::uint32_t flags = kFlagNone;
};

}  // namespace llg
