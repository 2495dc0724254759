#pragma once

#include "llg/energy_fix.hpp"
#include "llg/schemes.hpp"

namespace llg {

struct StepContext {
  Forcing forcing;
  SecantSettings secant;
};

/// Advances one step with the named scheme. Multistep schemes start at
/// reduced order until enough history is stored (flagged as bootstrap).
/// Energy schemes throw SecantFailure when xi cannot be found.
StepOutcome step(const SchemeState& state, SchemeId id, const StepContext& ctx);

}  // namespace llg
