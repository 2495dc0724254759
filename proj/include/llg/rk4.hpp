#pragma once

#include "llg/field.hpp"
#include "llg/schemes.hpp"

namespace llg {

/// Which algebraically equivalent right side the reference integrates.
///   Expanded:     -beta m x Lap m + gamma (Lap m + |grad m|^2 m)
///   CrossProduct: -beta m x Lap m - gamma m x (m x Lap m)
/// They agree for |m| = 1; only the second keeps |m| = 1 exactly after
/// spatial discretization.
enum class RhsForm { Expanded, CrossProduct };

/// Right side plus g(t), with no constraint enforcement.
VectorField llg_rhs(const VectorField& m, double beta, double gamma, const VectorField* forcing,
                    RhsForm form = RhsForm::Expanded);

/// Classical fourth-order Runge-Kutta on the unconstrained equation from t0 to
/// t_end with a fixed step. Explicit, so dt must respect the stiffness of the
/// grid (roughly dt * k_max^2 <= 2.7). Throws InstabilityError on NaN.
VectorField rk4_reference(VectorField ic, double t0, double dt, double t_end, double beta,
                          double gamma, const Forcing& forcing = {}, RhsForm form = RhsForm::Expanded);

/// Number of fixed steps of size dt covering [t0, t_end]; throws unless the
/// interval is an integer multiple of dt.
long steps_for(double t0, double t_end, double dt);

}  // namespace llg
