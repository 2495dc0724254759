#include "llg/field.hpp"

#include <cmath>
#include <sstream>

#include "llg/error.hpp"
#include "llg/spectral.hpp"

namespace llg {

VectorField::VectorField(ScalarField m1, ScalarField m2, ScalarField m3)
    : c{std::move(m1), std::move(m2), std::move(m3)} {
  require_same_grid(c[0].grid(), c[1].grid());
  require_same_grid(c[0].grid(), c[2].grid());
}

VectorField VectorField::constant(const Grid2D& grid, double v1, double v2, double v3) {
  return VectorField(ScalarField::constant(grid, v1), ScalarField::constant(grid, v2),
                     ScalarField::constant(grid, v3));
}

bool VectorField::all_finite() const {
  return c[0].all_finite() && c[1].all_finite() && c[2].all_finite();
}

VectorField& VectorField::operator+=(const VectorField& o) {
  for (int d = 0; d < 3; ++d) c[d] += o.c[d];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  for (int d = 0; d < 3; ++d) c[d] -= o.c[d];
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  for (auto& f : c) f *= s;
  return *this;
}

VectorField& VectorField::add_scaled(double a, const VectorField& x) {
  for (int d = 0; d < 3; ++d) c[d].add_scaled(a, x.c[d]);
  return *this;
}

VectorField& VectorField::scale_by(const ScalarField& s) {
  for (auto& f : c) f *= s;
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }
VectorField operator*(const ScalarField& s, VectorField v) { return v.scale_by(s); }

VectorField cross(const VectorField& a, const VectorField& b) {
  require_same_grid(a.grid(), b.grid());
  VectorField out(a.grid());
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double a1 = a.c[0][i], a2 = a.c[1][i], a3 = a.c[2][i];
    const double b1 = b.c[0][i], b2 = b.c[1][i], b3 = b.c[2][i];
    out.c[0][i] = a2 * b3 - a3 * b2;
    out.c[1][i] = a3 * b1 - a1 * b3;
    out.c[2][i] = a1 * b2 - a2 * b1;
  }
  return out;
}

ScalarField dot(const VectorField& a, const VectorField& b) {
  require_same_grid(a.grid(), b.grid());
  ScalarField out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a.c[0][i] * b.c[0][i] + a.c[1][i] * b.c[1][i] + a.c[2][i] * b.c[2][i];
  }
  return out;
}

ScalarField pointwise_norm(const VectorField& m) {
  ScalarField out(m.grid());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i] = std::sqrt(m.c[0][i] * m.c[0][i] + m.c[1][i] * m.c[1][i] + m.c[2][i] * m.c[2][i]);
  }
  return out;
}

VectorField normalize_pointwise(const VectorField& m) {
  const Grid2D& g = m.grid();
  VectorField out(g);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double n = std::sqrt(m.c[0][i] * m.c[0][i] + m.c[1][i] * m.c[1][i] + m.c[2][i] * m.c[2][i]);
    if (!std::isfinite(n)) throw InstabilityError("non-finite vector in normalization", 0.0);
    if (n == 0.0) {
      const int ix = static_cast<int>(i % static_cast<std::size_t>(g.nx()));
      const int iy = static_cast<int>(i / static_cast<std::size_t>(g.nx()));
      throw DegenerateError("zero-length vector in normalization", ix, iy, g.x(ix), g.y(iy));
    }
    for (int d = 0; d < 3; ++d) out.c[d][i] = m.c[d][i] / n;
  }
  return out;
}

VectorField laplacian(const VectorField& m) {
  return VectorField(laplacian(m.c[0]), laplacian(m.c[1]), laplacian(m.c[2]));
}

ScalarField grad_norm_sq(const VectorField& m) {
  ScalarField out(m.grid());
  for (const auto& comp : m.c) {
    auto [dx, dy] = gradient(comp);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += dx[i] * dx[i] + dy[i] * dy[i];
  }
  return out;
}

double integrate(const ScalarField& f) { return f.grid().cell_area() * f.sum(); }

double energy(const VectorField& m) { return 0.5 * integrate(grad_norm_sq(m)); }

double energy_spectral(const VectorField& m) {
  const Grid2D& g = m.grid();
  double power = 0.0;
  for (const auto& comp : m.c) {
    const Spectrum s = forward(comp);
    Spectrum sx = s;
    Spectrum sy = s;
    apply_dx(g, sx);
    apply_dy(g, sy);
    power += spectral_power(g, sx) + spectral_power(g, sy);
  }
  const double n = static_cast<double>(g.size());
  return 0.5 * g.cell_area() * power / n;
}

double dissipation(const VectorField& m) {
  const Grid2D& g = m.grid();
  VectorField lap(g);
  for (int d = 0; d < 3; ++d) lap[d] = laplacian(m[d]);
  const VectorField c = cross(m, lap);
  return integrate(dot(c, c));
}

double avg_linf_error(const VectorField& m, const VectorField& ref) {
  require_same_grid(m.grid(), ref.grid());
  double total = 0.0;
  for (int d = 0; d < 3; ++d) total += (m.c[d] - ref.c[d]).max_abs();
  return total / 3.0;
}

LengthRange length_deviation(const VectorField& m) {
  const ScalarField n = pointwise_norm(m);
  LengthRange r{n[0], n[0]};
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (std::isnan(n[i])) return {n[i], n[i]};
    r.min = std::min(r.min, n[i]);
    r.max = std::max(r.max, n[i]);
  }
  return r;
}

double grad_inf(const VectorField& m) { return std::sqrt(grad_norm_sq(m).max_abs()); }

namespace {
constexpr std::pair<RecordFlag, const char*> kFlagNames[] = {
    {kFlagNan, "nan"},
    {kFlagBootstrap, "bootstrap"},
    {kFlagDtMinForced, "dtmin"},
    {kFlagSecantFailed, "secant-failed"},
    {kFlagTruncated, "truncated"},
};
}  // namespace

std::string flags_to_string(std::uint32_t flags) {
  std::string out;
  for (const auto& [bit, name] : kFlagNames) {
    if (flags & bit) {
      if (!out.empty()) out += '|';
      out += name;
    }
  }
  return out;
}

std::uint32_t flags_from_string(const std::string& s) {
  std::uint32_t flags = kFlagNone;
  std::stringstream ss(s);
  std::string token;
  while (std::getline(ss, token, '|')) {
    if (token.empty()) continue;
    bool found = false;
    for (const auto& [bit, name] : kFlagNames) {
      if (token == name) {
        flags |= bit;
        found = true;
      }
    }
    if (!found) throw InvalidArgument("unknown record flag '" + token + "'");
  }
  return flags;
}

}  // namespace llg
