#include "llg/stepper.hpp"

#include <sstream>

#include "llg/error.hpp"

namespace llg {

namespace {

StepOutcome energy_or_throw(const SchemeState& state, EnergyBase base, const StepContext& ctx) {
  StepOutcome out = energy_step(state, base, ctx.forcing, ctx.secant);
  if (out.record.flags & kFlagSecantFailed) {
    std::ostringstream os;
    os << "secant iteration for xi did not converge after " << out.record.secant_iters
       << " iterations (t = " << out.record.t << ", dt = " << state.dt << ")";
    throw SecantFailure(os.str());
  }
  return out;
}

}  // namespace

StepOutcome step(const SchemeState& state, SchemeId id, const StepContext& ctx) {
  switch (id) {
    case SchemeId::Splitting: return splitting_step(state);
    case SchemeId::Bdf1: return bdf_step(state, 1, Formulation::TypeI, ctx.forcing);
    case SchemeId::Bdf2: return bdf_step(state, 2, Formulation::TypeI, ctx.forcing);
    case SchemeId::Bdf3: return bdf_step(state, 3, Formulation::TypeI, ctx.forcing);
    case SchemeId::Bdf1T2: return bdf_step(state, 1, Formulation::TypeII, ctx.forcing);
    case SchemeId::Bdf2T2: return bdf_step(state, 2, Formulation::TypeII, ctx.forcing);
    case SchemeId::Bdf3T2: return bdf_step(state, 3, Formulation::TypeII, ctx.forcing);
    case SchemeId::Cn: return cn_step(state, Formulation::TypeI, ctx.forcing);
    case SchemeId::CnT2: return cn_step(state, Formulation::TypeII, ctx.forcing);
    case SchemeId::SemiImplicit: return semi_implicit_step(state, ctx.forcing);
    case SchemeId::ProjectionE: return projection_e_step(state, ctx.forcing);
    case SchemeId::GaussSeidel: return gauss_seidel_step(state, ctx.forcing);
    case SchemeId::LlgBdf2: return llg_bdf2_step(state, ctx.forcing);
    case SchemeId::Bdf1Energy: return energy_or_throw(state, EnergyBase::Bdf1, ctx);
    case SchemeId::CnEnergy: return energy_or_throw(state, EnergyBase::Cn, ctx);
    case SchemeId::GaussSeidelEnergy: return energy_or_throw(state, EnergyBase::GaussSeidel, ctx);
  }
  throw InvalidArgument("unknown scheme id");
}

}  // namespace llg
