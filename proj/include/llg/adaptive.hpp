#pragma once

#include <functional>
#include <vector>

#include "llg/stepper.hpp"

namespace llg {

struct AdaptiveSettings {
  double tol = 5e-5;  // bound on the indicator |xi|
  double dt_min = 1e-6;
  double dt_max = 1e-2;
  double rho = 0.95;  // safety factor

  void validate() const;
};

/// clamp(rho * sqrt(tol / e) * dt, dt_min, dt_max); e == 0 gives dt_max.
double adapt_dt(double e, double dt, const AdaptiveSettings& s);

struct AdaptiveResult {
  SchemeState state;
  std::vector<RunRecord> records;  // accepted steps only
  int rejections = 0;
};

using StepObserver = std::function<void(const SchemeState&, const RunRecord&)>;

/// Runs an energy-dissipative scheme from state.t() to t_end, choosing dt from
/// |xi|. A step with |xi| > tol (or a failed secant solve) is retried from the
/// last accepted state with a smaller dt; at dt_min it is accepted and flagged.
/// The first attempt uses state.dt.
AdaptiveResult adaptive_run(SchemeState state, SchemeId scheme, const AdaptiveSettings& settings,
                            double t_end, const StepContext& ctx, const StepObserver& observer = {});

}  // namespace llg
