#include "llg/adaptive.hpp"

#include <algorithm>
#include <cmath>

#include "llg/error.hpp"

namespace llg {

void AdaptiveSettings::validate() const {
  if (!(tol > 0.0)) throw InvalidArgument("adaptive tolerance must be positive");
  if (!(dt_min > 0.0) || !(dt_min <= dt_max)) throw InvalidArgument("need 0 < dt-min <= dt-max");
  if (!(rho > 0.0 && rho < 1.0)) throw InvalidArgument("rho must lie in (0, 1)");
}

double adapt_dt(double e, double dt, const AdaptiveSettings& s) {
  if (!(dt > 0.0)) throw InvalidArgument("adapt_dt needs dt > 0");
  if (e < 0.0 || std::isnan(e)) throw InvalidArgument("adapt_dt needs e >= 0");
  if (e == 0.0) return s.dt_max;
  return std::clamp(s.rho * std::sqrt(s.tol / e) * dt, s.dt_min, s.dt_max);
}

namespace {

EnergyBase base_of(SchemeId id) {
  switch (id) {
    case SchemeId::Bdf1Energy: return EnergyBase::Bdf1;
    case SchemeId::CnEnergy: return EnergyBase::Cn;
    case SchemeId::GaussSeidelEnergy: return EnergyBase::GaussSeidel;
    default: break;
  }
  throw InvalidArgument("adaptive stepping needs an energy scheme (bdf1-energy, cn-energy, "
                        "gauss-seidel-energy), got '" + std::string(scheme_name(id)) + "'");
}

// Step size that lands on t_end without leaving a sliver shorter than dt_min.
double fit_to_end(double dt, double remaining, const AdaptiveSettings& s, bool& truncated) {
  truncated = false;
  if (dt >= remaining) {
    truncated = true;
    return remaining;
  }
  if (remaining - dt < s.dt_min) {
    truncated = remaining <= s.dt_max;
    return truncated ? remaining : 0.5 * remaining;
  }
  return dt;
}

}  // namespace

AdaptiveResult adaptive_run(SchemeState state, SchemeId scheme, const AdaptiveSettings& settings,
                            double t_end, const StepContext& ctx, const StepObserver& observer) {
  settings.validate();
  const EnergyBase base = base_of(scheme);
  AdaptiveResult result;
  double dt = std::clamp(state.dt, settings.dt_min, settings.dt_max);

  while (state.t() < t_end) {
    bool truncated = false;
    SchemeState trial = state;
    trial.dt = fit_to_end(dt, t_end - state.t(), settings, truncated);
    StepOutcome out = energy_step(trial, base, ctx.forcing, ctx.secant);

    const bool failed = (out.record.flags & kFlagSecantFailed) != 0;
    const double e = std::abs(out.record.xi);
    const bool at_floor = trial.dt <= settings.dt_min;
    if ((failed || e > settings.tol) && !at_floor) {
      ++result.rejections;
      dt = failed ? std::max(settings.dt_min, 0.5 * trial.dt) : adapt_dt(e, trial.dt, settings);
      continue;
    }
    if (failed) {
      throw SecantFailure("secant iteration failed at dt_min (t = " + std::to_string(state.t()) + ")");
    }
    if (e > settings.tol) out.record.flags |= kFlagDtMinForced;
    if (truncated) {
      out.record.flags |= kFlagTruncated;
      out.state.history.front().t = t_end;
      out.record.t = t_end;
    }
    state = std::move(out.state);
    result.records.push_back(out.record);
    if (observer) observer(state, out.record);
    // A shortened final step says nothing about the step size the dynamics allow.
    if (!truncated) dt = adapt_dt(e, trial.dt, settings);
  }
  state.dt = dt;
  result.state = std::move(state);
  return result;
}

}  // namespace llg
