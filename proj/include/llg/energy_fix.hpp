#pragma once

#include <functional>

#include "llg/schemes.hpp"

namespace llg {

struct SecantSettings {
  double tol = 1e-12;
  int max_iters = 50;
  double xi_init_scale = 1.0;  // first iterate xi_0 = -xi_init_scale * dt^2

  void validate() const;
};

struct XiOutcome {
  double xi = 0.0;
  int iters = 0;
  double residual = 0.0;
  bool converged = false;
};

/// (m_hat + xi*(1,1,1)) / |m_hat + xi*(1,1,1)| pointwise.
VectorField apply_xi(const VectorField& m_hat, double xi);

/// F(xi) = E(apply_xi(m_hat, xi)) - prev_energy + dt * target_dissipation.
double residual(double xi, const VectorField& m_hat, double prev_energy, double target_dissipation,
                double dt);

/// Secant iteration from xi_1 = 0 and xi_0 = -xi_init_scale*dt^2. `iters`
/// counts residual evaluations after the one at xi_0, so a root at 0 reports 1.
XiOutcome secant_solve(const std::function<double(double)>& f, double dt,
                       const SecantSettings& settings);

XiOutcome secant_solve(const VectorField& m_hat, double prev_energy, double target_dissipation,
                       double dt, const SecantSettings& settings);

enum class EnergyBase { Bdf1, Cn, GaussSeidel };

/// Predictor + corrector of the base scheme, then the scalar multiplier xi
/// that makes E^{n+1} - E^n = -dt * D hold. A secant failure is reported
/// through kFlagSecantFailed on the record rather than thrown.
StepOutcome energy_step(const SchemeState& state, EnergyBase base, const Forcing& forcing,
                        const SecantSettings& settings);

}  // namespace llg
