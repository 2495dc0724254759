#include "llg/energy_fix.hpp"

#include <cmath>

#include "llg/error.hpp"

namespace llg {

void SecantSettings::validate() const {
  if (!(tol > 0.0)) throw InvalidArgument("secant tolerance must be positive");
  if (max_iters < 2) throw InvalidArgument("secant needs at least 2 iterations");
  if (!std::isfinite(xi_init_scale)) throw InvalidArgument("xi-init-scale must be finite");
}

VectorField apply_xi(const VectorField& m_hat, double xi) {
  VectorField shifted = m_hat;
  if (xi != 0.0) {
    for (auto& comp : shifted.c) {
      for (double& v : comp.values()) v += xi;
    }
  }
  return normalize_pointwise(shifted);
}

double residual(double xi, const VectorField& m_hat, double prev_energy, double target_dissipation,
                double dt) {
  return energy(apply_xi(m_hat, xi)) - prev_energy + dt * target_dissipation;
}

XiOutcome secant_solve(const std::function<double(double)>& f, double dt,
                       const SecantSettings& settings) {
  settings.validate();
  XiOutcome out;
  double x1 = 0.0;
  double f1 = f(x1);
  out.iters = 1;
  if (std::abs(f1) <= settings.tol) return {x1, 1, f1, true};

  double x0 = -settings.xi_init_scale * dt * dt;
  double f0 = f(x0);
  while (out.iters < settings.max_iters) {
    if (f1 == f0) {
      // Flat secant: nudge the newest iterate and try again.
      x1 += dt * dt;
      f1 = f(x1);
    } else {
      const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
      x0 = x1;
      f0 = f1;
      x1 = x2;
      f1 = f(x1);
    }
    ++out.iters;
    if (!std::isfinite(f1)) break;
    if (std::abs(f1) <= settings.tol) return {x1, out.iters, f1, true};
  }
  return {x1, out.iters, f1, false};
}

XiOutcome secant_solve(const VectorField& m_hat, double prev_energy, double target_dissipation,
                       double dt, const SecantSettings& settings) {
  return secant_solve(
      [&](double xi) { return residual(xi, m_hat, prev_energy, target_dissipation, dt); }, dt,
      settings);
}

StepOutcome energy_step(const SchemeState& state, EnergyBase base, const Forcing& forcing,
                        const SecantSettings& settings) {
  const double gamma = state.params.gamma;
  const VectorField& mn = state.current().m;
  Corrected c = [&] {
    switch (base) {
      case EnergyBase::Bdf1: return bdf1_multiplier_predict_correct(state, forcing);
      case EnergyBase::Cn: return cn_predict_correct(state, Formulation::TypeI, forcing);
      case EnergyBase::GaussSeidel: return gauss_seidel_predict_correct(state, forcing);
    }
    throw InvalidArgument("unknown energy base scheme");
  }();

  // Target dissipation: at m_hat for the first-order scheme, at the midpoint
  // average otherwise.
  double target = 0.0;
  if (base == EnergyBase::Bdf1) {
    target = gamma * dissipation(c.m);
  } else {
    target = gamma * dissipation(0.5 * (c.m + mn));
  }

  const XiOutcome xi = secant_solve(c.m, state.energy, target, state.dt, settings);
  VectorField m = apply_xi(c.m, xi.xi);

  std::uint32_t flags = kFlagNone;
  if (!xi.converged) flags |= kFlagSecantFailed;
  if (base == EnergyBase::GaussSeidel && state.depth() < 2) flags |= kFlagBootstrap;

  SchemeState next = advance(state, std::move(m), std::move(c.lambda), state.dt);
  RunRecord rec = make_record(next, state.dt, target, flags);
  rec.xi = xi.xi;
  rec.secant_iters = xi.iters;
  next.energy = rec.energy;
  return {std::move(next), rec};
}

}  // namespace llg
