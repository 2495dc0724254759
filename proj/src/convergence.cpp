#include "llg/convergence.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "llg/error.hpp"
#include "llg/rk4.hpp"

namespace llg {

int worker_count() {
  int n = 0;
  if (const char* env = std::getenv("LLG_NUM_THREADS")) n = std::atoi(env);
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(n, 1);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(worker_count()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!first) first = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();
  if (first) std::rethrow_exception(first);
}

SchemeState start_state(const Problem& problem, SchemeId scheme, double dt, bool seed_exact) {
  const Formulation kind = formulation_of(scheme);
  if (seed_exact && problem.exact) {
    return initial_state_from_exact(problem.exact, 0.0, dt, problem.params, kind, history_depth(scheme));
  }
  return initial_state(problem.initial(), 0.0, dt, problem.params, kind);
}

RunRecord initial_record(const SchemeState& state) {
  const double d = state.params.gamma * dissipation(state.current().m);
  RunRecord r = make_record(state, 0.0, d, kFlagNone);
  return r;
}

FixedRun run_fixed(SchemeState state, SchemeId scheme, long steps, const StepContext& ctx,
                   const StepCallback& callback) {
  FixedRun run;
  run.records.push_back(initial_record(state));
  if (callback) callback(0, state, run.records.back());
  for (long s = 1; s <= steps; ++s) {
    const double t_next = state.t() + state.dt;
    try {
      StepOutcome out = step(state, scheme, ctx);
      if (out.record.flags & kFlagNan) {
        run.records.push_back(out.record);
        run.blew_up = true;
        run.blowup_time = out.record.t;
        break;
      }
      state = std::move(out.state);
      run.records.push_back(out.record);
    } catch (const InstabilityError&) {
      run.blew_up = true;
      run.blowup_time = t_next;
      break;
    }
    if (callback) callback(s, state, run.records.back());
  }
  run.state = std::move(state);
  return run;
}

std::vector<ConvergenceRow> with_orders(const std::vector<double>& dts, const std::vector<double>& errors) {
  if (dts.size() != errors.size()) throw InvalidArgument("dts and errors differ in length");
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < dts.size(); ++i) {
    ConvergenceRow r{dts[i], errors[i], std::nullopt};
    if (i > 0) {
      const double a = errors[i - 1], b = errors[i];
      if (std::isfinite(a) && std::isfinite(b) && a > 0.0 && b > 0.0) {
        r.order = std::log2(a / b) / std::log2(dts[i - 1] / dts[i]);
      }
    }
    rows.push_back(r);
  }
  return rows;
}

std::filesystem::path ReferenceCache::path_for(const Problem& problem, double dt, double t) const {
  const Grid2D& g = problem.grid;
  std::string name = "ref_" + std::string(ic_name(problem.ic)) + "_b" + format_double(problem.params.beta) +
                     "_g" + format_double(problem.params.gamma) + "_n" + std::to_string(g.nx()) + "x" +
                     std::to_string(g.ny()) + "_dt" + format_double(dt) +
                     (form == RhsForm::CrossProduct ? "_cross" : "_expanded") + "_t" + format_double(t) + ".llgf";
  return dir / name;
}

std::vector<VectorField> ReferenceCache::get(const Problem& problem, double dt,
                                             const std::vector<double>& times) const {
  std::vector<VectorField> out;
  if (!dir.empty()) {
    bool all = true;
    for (double t : times) {
      const auto p = path_for(problem, dt, t);
      if (!std::filesystem::exists(p)) {
        all = false;
        break;
      }
      Snapshot s = read_snapshot(p, problem.grid.x0(), problem.grid.y0());
      if (!(s.m.grid() == problem.grid)) {
        all = false;
        break;
      }
      out.push_back(std::move(s.m));
    }
    if (all) return out;
    out.clear();
  }
  VectorField m = problem.initial();
  double t0 = 0.0;
  for (double t : times) {
    if (t < t0) throw InvalidArgument("reference times must be ascending");
    m = rk4_reference(std::move(m), t0, dt, t, problem.params.beta, problem.params.gamma, problem.forcing, form);
    t0 = t;
    if (!dir.empty()) write_snapshot(path_for(problem, dt, t), m, t);
    out.push_back(m);
  }
  return out;
}

namespace {

void check_halving(const std::vector<double>& dts) {
  if (dts.size() < 2) throw InvalidArgument("a convergence study needs at least two time steps");
  for (std::size_t i = 1; i < dts.size(); ++i) {
    if (!(dts[i] > 0.0) || std::abs(dts[i - 1] / dts[i] - 2.0) > 1e-9) {
      throw InvalidArgument("time steps must decrease by a factor of 2 from one row to the next");
    }
  }
}

}  // namespace

long landing_steps(double t_end, double dt) {
  if (!(dt > 0.0) || !(t_end > 0.0)) throw InvalidArgument("time step and end time must be positive");
  return std::max(1L, static_cast<long>(std::floor(t_end / dt + 1e-9)));
}

double landing_time(double t_end, double dt) { return static_cast<double>(landing_steps(t_end, dt)) * dt; }

std::vector<ConvergenceRow> convergence_study(SchemeId scheme, const Problem& problem,
                                              const std::vector<double>& dts, double t_end,
                                              const ReferenceFn& reference, const StudyOptions& options) {
  check_halving(dts);
  if (!reference && !problem.exact) throw InvalidArgument("no exact solution; a reference is required");
  const ReferenceFn& target = reference ? reference : problem.exact;
  std::vector<VectorField> targets;
  for (double dt : dts) targets.push_back(target(landing_time(t_end, dt)));
  std::vector<double> errors(dts.size());
  parallel_for(dts.size(), [&](std::size_t i) {
    const StepContext ctx{problem.forcing, options.secant};
    FixedRun run = run_fixed(start_state(problem, scheme, dts[i], options.seed_exact), scheme,
                             landing_steps(t_end, dts[i]), ctx);
    if (options.observer) options.observer(scheme, dts[i], run.records);
    errors[i] = run.blew_up ? std::numeric_limits<double>::quiet_NaN()
                            : avg_linf_error(run.state.current().m, targets[i]);
  });
  return with_orders(dts, errors);
}

Comparison compare_schemes(const std::vector<SchemeId>& schemes, const Problem& problem, double dt,
                           const std::vector<double>& times, const std::vector<VectorField>& reference,
                           const StudyOptions& options) {
  if (times.empty() || reference.size() != times.size()) throw InvalidArgument("one reference field per report time");
  std::vector<long> at_step;
  for (double t : times) at_step.push_back(steps_for(0.0, t, dt));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Comparison c{schemes, times, std::vector<std::vector<double>>(schemes.size(), std::vector<double>(times.size(), nan)),
               std::vector<double>(schemes.size(), nan)};
  parallel_for(schemes.size(), [&](std::size_t s) {
    const StepContext ctx{problem.forcing, options.secant};
    std::size_t next = 0;
    auto cb = [&](long step, const SchemeState& st, const RunRecord&) {
      while (next < at_step.size() && at_step[next] == step) {
        c.errors[s][next] = avg_linf_error(st.current().m, reference[next]);
        ++next;
      }
    };
    FixedRun run = run_fixed(start_state(problem, schemes[s], dt, options.seed_exact), schemes[s],
                             at_step.back(), ctx, cb);
    if (options.observer) options.observer(schemes[s], dt, run.records);
    if (run.blew_up) c.blowup_times[s] = run.blowup_time;
  });
  return c;
}

void write_comparison(std::ostream& out, const Comparison& c) {
  out << "T";
  for (SchemeId s : c.schemes) out << ',' << scheme_name(s);
  out << '\n';
  for (std::size_t i = 0; i < c.times.size(); ++i) {
    out << format_double(c.times[i]);
    for (std::size_t s = 0; s < c.schemes.size(); ++s) {
      out << ',';
      const double e = c.errors[s][i];
      if (std::isfinite(e)) {
        out << format_double(e);
      } else if (i == 0 || std::isfinite(c.errors[s][i - 1])) {
        out << "NaN";
      } else {
        out << '-';
      }
    }
    out << '\n';
  }
}

}  // namespace llg
