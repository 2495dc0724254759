#include "llg/problems.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "llg/error.hpp"

namespace llg {

using Vec = ManufacturedSolution::Vec;

Vec ManufacturedSolution::value(double x, double y, double t) {
  const double a = t + x, b = t + y;
  return {std::sin(a) * std::cos(b), std::cos(a) * std::cos(b), std::sin(b)};
}

Vec ManufacturedSolution::time_derivative(double x, double y, double t) {
  const double a = t + x, b = t + y;
  return {std::cos(a) * std::cos(b) - std::sin(a) * std::sin(b),
          -std::sin(a) * std::cos(b) - std::cos(a) * std::sin(b), std::cos(b)};
}

Vec ManufacturedSolution::d_dx(double x, double y, double t) {
  const double a = t + x, b = t + y;
  return {std::cos(a) * std::cos(b), -std::sin(a) * std::cos(b), 0.0};
}

Vec ManufacturedSolution::d_dy(double x, double y, double t) {
  const double a = t + x, b = t + y;
  return {-std::sin(a) * std::sin(b), -std::cos(a) * std::sin(b), std::cos(b)};
}

Vec ManufacturedSolution::laplacian(double x, double y, double t) {
  const Vec m = value(x, y, t);
  return {-2.0 * m[0], -2.0 * m[1], -m[2]};
}

double ManufacturedSolution::grad_sq(double /*x*/, double y, double t) {
  const double cb = std::cos(t + y);
  return 1.0 + cb * cb;
}

Vec ManufacturedSolution::forcing(double x, double y, double t, double beta, double gamma) {
  const Vec m = value(x, y, t);
  const Vec mt = time_derivative(x, y, t);
  const Vec l = laplacian(x, y, t);
  const double g2 = grad_sq(x, y, t);
  const Vec mxl = {m[1] * l[2] - m[2] * l[1], m[2] * l[0] - m[0] * l[2], m[0] * l[1] - m[1] * l[0]};
  Vec g{};
  for (int d = 0; d < 3; ++d) g[d] = mt[d] + beta * mxl[d] - gamma * (l[d] + g2 * m[d]);
  return g;
}

VectorField ManufacturedSolution::field(const Grid2D& grid, double t) {
  return VectorField::sample(grid, [t](double x, double y) { return value(x, y, t); });
}

VectorField manufactured_forcing(double t, const Grid2D& grid, double beta, double gamma) {
  return VectorField::sample(grid, [=](double x, double y) {
    return ManufacturedSolution::forcing(x, y, t, beta, gamma);
  });
}

namespace {

void require_domain(const Grid2D& g, double l, double origin, const char* ic) {
  const double eps = 1e-12;
  if (std::abs(g.lx() - l) > eps || std::abs(g.ly() - l) > eps || std::abs(g.x0() - origin) > eps ||
      std::abs(g.y0() - origin) > eps) {
    throw InvalidArgument(std::string(ic) + " initial condition lives on a different domain");
  }
}

}  // namespace

std::array<double, 3> benchmark_profile(double x, double y) {
  const double r = std::sqrt(x * x + y * y);
  if (r >= 0.5) return {0.0, 0.0, -1.0};
  const double s = 1.0 - 2.0 * r;
  const double a = s * s * s * s;
  const double den = a * a + r * r;
  return {2.0 * x * a / den, 2.0 * y * a / den, (a * a - r * r) / den};
}

VectorField ic_benchmark(const Grid2D& grid) {
  require_domain(grid, 1.0, -0.5, "benchmark");
  return VectorField::sample(grid, benchmark_profile);
}

VectorField ic_smooth(const Grid2D& grid) {
  require_domain(grid, 2.0 * std::numbers::pi, 0.0, "smooth");
  const double s = std::sin(0.1), c = std::cos(0.1);
  return VectorField::sample(grid, [=](double x, double y) -> std::array<double, 3> {
    const double p = std::cos(x) * std::cos(y);
    return {p * s, p * c, std::sqrt(1.0 - p * p)};
  });
}

InitialCondition parse_ic(std::string_view name) {
  if (name == "benchmark") return InitialCondition::Benchmark;
  if (name == "smooth-6.2" || name == "smooth") return InitialCondition::Smooth;
  if (name == "manufactured") return InitialCondition::Manufactured;
  throw InvalidArgument("unknown initial condition '" + std::string(name) +
                        "'; valid: benchmark smooth-6.2 manufactured");
}

std::string_view ic_name(InitialCondition ic) {
  switch (ic) {
    case InitialCondition::Benchmark: return "benchmark";
    case InitialCondition::Smooth: return "smooth-6.2";
    case InitialCondition::Manufactured: return "manufactured";
  }
  return "?";
}

Grid2D default_grid(InitialCondition ic, int nx, int ny) {
  if (ic == InitialCondition::Benchmark) return Grid2D::build(nx, ny, 1.0, 1.0, -0.5, -0.5);
  const double l = 2.0 * std::numbers::pi;
  return Grid2D::build(nx, ny, l, l);
}

VectorField Problem::initial() const {
  switch (ic) {
    case InitialCondition::Benchmark: return ic_benchmark(grid);
    case InitialCondition::Smooth: return ic_smooth(grid);
    case InitialCondition::Manufactured: return ManufacturedSolution::field(grid, 0.0);
  }
  throw InvalidArgument("unknown initial condition");
}

Problem make_problem(InitialCondition ic, const Grid2D& grid, const SchemeParams& params) {
  params.validate();
  Problem p{ic, grid, params, {}, {}};
  if (ic == InitialCondition::Manufactured) {
    require_domain(grid, 2.0 * std::numbers::pi, 0.0, "manufactured");
    const double beta = params.beta, gamma = params.gamma;
    p.forcing = [grid, beta, gamma](double t) { return manufactured_forcing(t, grid, beta, gamma); };
    p.exact = [grid](double t) { return ManufacturedSolution::field(grid, t); };
  }
  // Validates the domain for the other initial conditions.
  (void)p.initial();
  return p;
}

}  // namespace llg
