#include "llg/rk4.hpp"

#include <cmath>
#include <optional>

#include "llg/error.hpp"
#include "llg/spectral.hpp"

namespace llg {

long steps_for(double t0, double t_end, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  const double span = t_end - t0;
  if (span < 0.0) throw InvalidArgument("end time precedes start time");
  const double n = std::round(span / dt);
  if (std::abs(n * dt - span) > 1e-9 * std::max(span, dt)) {
    throw InvalidArgument("end time is not an integer multiple of the time step");
  }
  return static_cast<long>(n);
}

VectorField llg_rhs(const VectorField& m, double beta, double gamma, const VectorField* forcing,
                    RhsForm form) {
  const Grid2D& g = m.grid();
  VectorField lap(g);
  ScalarField gsq(g);
  for (int d = 0; d < 3; ++d) {
    Derivatives der = derivatives(m[d]);
    for (std::size_t i = 0; i < gsq.size(); ++i) gsq[i] += der.dx[i] * der.dx[i] + der.dy[i] * der.dy[i];
    lap[d] = std::move(der.lap);
  }
  VectorField out = form == RhsForm::Expanded ? gamma * (lap + gsq * m) : (-gamma) * cross(m, cross(m, lap));
  if (beta != 0.0) out.add_scaled(-beta, cross(m, lap));
  if (forcing) out += *forcing;
  return out;
}

VectorField rk4_reference(VectorField m, double t0, double dt, double t_end, double beta,
                          double gamma, const Forcing& forcing, RhsForm form) {
  const long n = steps_for(t0, t_end, dt);
  auto force = [&](double t) -> std::optional<VectorField> {
    if (!forcing) return std::nullopt;
    return forcing(t);
  };
  for (long s = 0; s < n; ++s) {
    const double t = t0 + static_cast<double>(s) * dt;
    const auto g0 = force(t);
    const auto gh = force(t + 0.5 * dt);
    const auto g1 = force(t + dt);
    const VectorField k1 = llg_rhs(m, beta, gamma, g0 ? &*g0 : nullptr, form);
    VectorField tmp = m;
    tmp.add_scaled(0.5 * dt, k1);
    const VectorField k2 = llg_rhs(tmp, beta, gamma, gh ? &*gh : nullptr, form);
    tmp = m;
    tmp.add_scaled(0.5 * dt, k2);
    const VectorField k3 = llg_rhs(tmp, beta, gamma, gh ? &*gh : nullptr, form);
    tmp = m;
    tmp.add_scaled(dt, k3);
    const VectorField k4 = llg_rhs(tmp, beta, gamma, g1 ? &*g1 : nullptr, form);
    m.add_scaled(dt / 6.0, k1);
    m.add_scaled(dt / 3.0, k2);
    m.add_scaled(dt / 3.0, k3);
    m.add_scaled(dt / 6.0, k4);
    if (!m.all_finite()) throw InstabilityError("RK4 reference produced non-finite values", t + dt);
  }
  return m;
}

}  // namespace llg
