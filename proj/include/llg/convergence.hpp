#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "llg/io.hpp"
#include "llg/problems.hpp"
#include "llg/rk4.hpp"
#include "llg/stepper.hpp"

namespace llg {

/// Worker cap from LLG_NUM_THREADS (unset or 0 means hardware concurrency).
int worker_count();

/// Runs fn(0..n-1) on up to worker_count() threads. The first exception thrown
/// by any task is rethrown after all tasks finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Starting state for a run. With seed_exact and a known exact solution,
/// multistep history is filled from it so no startup steps are needed.
SchemeState start_state(const Problem& problem, SchemeId scheme, double dt, bool seed_exact);

/// Outcome of a fixed-step integration.
struct FixedRun {
  SchemeState state;
  std::vector<RunRecord> records;  // initial level first, then one per step
  bool blew_up = false;
  double blowup_time = 0.0;
};

/// Called after the initial level (step 0) and after every accepted step.
using StepCallback = std::function<void(long step, const SchemeState&, const RunRecord&)>;

/// Takes `steps` steps of size state.dt. Non-finite output (a NaN flag from an
/// unconstrained scheme, or an instability raised by a corrector) ends the run
/// with blew_up set instead of throwing.
FixedRun run_fixed(SchemeState state, SchemeId scheme, long steps, const StepContext& ctx,
                   const StepCallback& callback = {});

/// Record describing a state that has not been stepped yet.
RunRecord initial_record(const SchemeState& state);

/// order_i = log2(e_{i-1}/e_i); undefined for the first row and whenever
/// either error is zero or not finite.
std::vector<ConvergenceRow> with_orders(const std::vector<double>& dts, const std::vector<double>& errors);

/// Reference trajectories from RK4, cached on disk as snapshots named after
/// (initial condition, beta, gamma, grid, dt, right-side form, time).
struct ReferenceCache {
  std::filesystem::path dir;  // empty disables caching
  RhsForm form = RhsForm::CrossProduct;

  /// Reference fields at each requested time (ascending, starting after 0).
  std::vector<VectorField> get(const Problem& problem, double dt, const std::vector<double>& times) const;
  std::filesystem::path path_for(const Problem& problem, double dt, double t) const;
};

/// Receives the full record list of each finished run; may be called from worker threads.
using RunObserver = std::function<void(SchemeId, double dt, const std::vector<RunRecord>&)>;

struct StudyOptions {
  SecantSettings secant;
  bool seed_exact = true;
  RunObserver observer;
};

/// Whole steps of size dt that fit in [0, t_end] (at least one); the run ends
/// at landing_time, which falls short of t_end when t_end is not a multiple of dt.
long landing_steps(double t_end, double dt);
double landing_time(double t_end, double dt);

using ReferenceFn = std::function<VectorField(double)>;

/// Runs the scheme at every dt (largest first, successive ratio 2) to near
/// t_end and tabulates the average L-infinity error against reference(t) at
/// the landing time, or against the exact solution when reference is empty.
/// A blown-up run gives a NaN row.
std::vector<ConvergenceRow> convergence_study(SchemeId scheme, const Problem& problem,
                                              const std::vector<double>& dts, double t_end,
                                              const ReferenceFn& reference = {},
                                              const StudyOptions& options = {});

/// Errors of several schemes at fixed dt against reference fields at the
/// report times. errors[s][i] is NaN once scheme s has blown up.
struct Comparison {
  std::vector<SchemeId> schemes;
  std::vector<double> times;
  std::vector<std::vector<double>> errors;
  std::vector<double> blowup_times;  // NaN when the run completed
};

Comparison compare_schemes(const std::vector<SchemeId>& schemes, const Problem& problem, double dt,
                           const std::vector<double>& times, const std::vector<VectorField>& reference,
                           const StudyOptions& options = {});

/// CSV with a T column and one column per scheme; blown-up cells read "NaN"
/// at the first report time past the blowup and "-" afterwards.
void write_comparison(std::ostream& out, const Comparison& c);

}  // namespace llg
