#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "llg/bdf.hpp"
#include "llg/field.hpp"

namespace llg {

enum class SchemeId {
  Splitting,
  Bdf1,
  Bdf2,
  Bdf3,
  Bdf1T2,
  Bdf2T2,
  Bdf3T2,
  Cn,
  CnT2,
  SemiImplicit,
  ProjectionE,
  GaussSeidel,
  LlgBdf2,
  Bdf1Energy,
  CnEnergy,
  GaussSeidelEnergy,
};

/// Type-I schemes carry lambda ~ |grad m|^2, Type-II schemes carry lambda ~ 0.
enum class Formulation { TypeI, TypeII };

/// Throws InvalidArgument listing the valid identifiers.
SchemeId parse_scheme(std::string_view name);
std::string_view scheme_name(SchemeId id);
std::span<const std::string_view> scheme_names();

Formulation formulation_of(SchemeId id);
bool is_energy_scheme(SchemeId id);
/// False only for the unconstrained semi-implicit baseline.
bool is_length_preserving(SchemeId id);
/// Number of stored levels a scheme uses once past its startup steps.
int history_depth(SchemeId id);

struct SchemeParams {
  double beta = 0.0;   // precession
  double gamma = 1.0;  // damping, > 0
  double stab = 0.0;   // stabilization S >= 0 for the Gauss-Seidel predictor
  bool dealias = false;

  void validate() const;
};

/// External force g(t) on the grid; empty when the problem is unforced.
using Forcing = std::function<VectorField(double)>;

/// One accepted time level with the derived quantities every scheme reuses.
struct Level {
  double t;
  VectorField m;
  ScalarField lambda;
  VectorField lap;      // Lap m
  ScalarField grad_sq;  // |grad m|^2
};
Level make_level(double t, VectorField m, ScalarField lambda);

struct SchemeState {
  std::vector<Level> history;  // most recent first, at most 3 levels
  double dt = 0.0;
  SchemeParams params;
  double energy = 0.0;  // E^n of the last accepted level

  const Level& current() const { return history.front(); }
  double t() const { return history.front().t; }
  int depth() const { return static_cast<int>(history.size()); }
};

/// Fresh state at t0. lambda^0 = |grad m0|^2 for Type-I and 0 for Type-II.
SchemeState initial_state(VectorField m0, double t0, double dt, const SchemeParams& params,
                          Formulation kind);

/// State whose history is filled with exact past levels t0, t0-dt, ... (depth
/// entries), so multistep schemes run at full order from the first step.
SchemeState initial_state_from_exact(const std::function<VectorField(double)>& exact, double t0,
                                     double dt, const SchemeParams& params, Formulation kind,
                                     int depth);

/// Pushes a new level, keeping at most three.
SchemeState advance(const SchemeState& state, VectorField m, ScalarField lambda, double dt);

struct Corrected {
  VectorField m;
  ScalarField lambda;
};

/// Solves (a - b*lambda) m = r with |m| = 1 pointwise, taking the root
/// consistent with the continuous problem: lambda = (a - |r|)/b, m = r/|r|.
Corrected generic_corrector(double a, double b, const VectorField& r);

struct StepOutcome {
  SchemeState state;
  RunRecord record;
};

/// Diagnostics for a freshly advanced state. `dissipation` is the D of
/// E^{n+1} - E^n = -dt*D for energy schemes and gamma*||m x Lap m||^2 otherwise.
RunRecord make_record(const SchemeState& advanced, double dt, double dissipation,
                      std::uint32_t flags);

VectorField predictor_bdf(const SchemeState& state, const BdfTable& table, Formulation kind,
                          const VectorField* forcing);
Corrected corrector_bdf(const VectorField& mtilde, const SchemeState& state, const BdfTable& table);

StepOutcome splitting_step(const SchemeState& state);
StepOutcome bdf_step(const SchemeState& state, int k, Formulation kind, const Forcing& forcing);
StepOutcome cn_step(const SchemeState& state, Formulation kind, const Forcing& forcing);
StepOutcome semi_implicit_step(const SchemeState& state, const Forcing& forcing);
StepOutcome projection_e_step(const SchemeState& state, const Forcing& forcing);
StepOutcome gauss_seidel_step(const SchemeState& state, const Forcing& forcing);
StepOutcome llg_bdf2_step(const SchemeState& state, const Forcing& forcing);

VectorField gauss_seidel_predictor(const SchemeState& state, const Forcing& forcing);

// Predictor + corrector halves shared with the energy-dissipative schemes.
Corrected cn_predict_correct(const SchemeState& state, Formulation kind, const Forcing& forcing);
Corrected gauss_seidel_predict_correct(const SchemeState& state, const Forcing& forcing);
Corrected bdf1_multiplier_predict_correct(const SchemeState& state, const Forcing& forcing);

/// Explicit term of projection-e: sum_d d_d(|grad m|^2) * d_d m_i per component.
VectorField projection_e_extra_term(const VectorField& m);

}  // namespace llg
