#include "llg/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "llg/error.hpp"

namespace llg {

namespace {

void progress(int stride, long step, const RunRecord& r, const std::string& label) {
  if (stride <= 0 || step % stride != 0) return;
  std::fprintf(stderr, "[%s] step %ld t=%.6g E=%.9g dt=%.3g\n", label.c_str(), step, r.t, r.energy, r.dt);
}

std::filesystem::path out_file(const std::filesystem::path& dir, const std::string& name) { return dir / name; }

}  // namespace

void ExperimentSpec::validate() const {
  if (!scheme) throw ConfigError("missing scheme (set 'scheme')");
  if (!ic) throw ConfigError("missing initial condition (set 'ic')");
  if (!dt && !adaptive) throw ConfigError("set either a time step 'dt' or adaptive stepping");
  if (dt && !(*dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(t_end > 0.0)) throw ConfigError("end time 'tmax' must be positive");
  if (nx < 4 || ny < 4 || nx % 2 || ny % 2) throw ConfigError("nx and ny must be even and at least 4");
  if (adaptive && !is_energy_scheme(*scheme)) {
    throw ConfigError("adaptive stepping needs an energy scheme (bdf1-energy, cn-energy, gauss-seidel-energy)");
  }
  if (perturb < 0.0) throw ConfigError("perturb must be non-negative");
  if (perturb > 0.0 && *ic == InitialCondition::Manufactured) {
    throw ConfigError("perturb does not apply to the manufactured problem");
  }
  for (double t : snapshot_times) {
    if (t < 0.0 || t > t_end) throw ConfigError("snapshot times must lie in [0, tmax]");
  }
  try {
    params.validate();
    secant.validate();
    if (adaptive) adaptive->validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

Problem ExperimentSpec::problem() const {
  return make_problem(*ic, default_grid(*ic, nx, ny), params);
}

namespace {

SchemeState spec_start(const ExperimentSpec& spec, const Problem& problem, double dt) {
  if (spec.perturb <= 0.0) return start_state(problem, *spec.scheme, dt, problem.exact != nullptr);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> u(-spec.perturb, spec.perturb);
  VectorField m = problem.initial();
  for (int d = 0; d < 3; ++d) {
    for (std::size_t i = 0; i < m.size(); ++i) m[d][i] += u(rng);
  }
  return initial_state(normalize_pointwise(m), 0.0, dt, problem.params, formulation_of(*spec.scheme));
}

}  // namespace

std::string snapshot_name(const std::string& stem, double t) {
  return stem + "_t" + format_double(t) + ".llgf";
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const Problem problem = spec.problem();
  const StepContext ctx{problem.forcing, spec.secant};
  ExperimentResult res;
  std::vector<double> snaps = spec.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  const bool write = !spec.out_dir.empty();
  auto save = [&](const VectorField& m, double t, double label) {
    if (!write) return;
    const auto p = out_file(spec.out_dir, snapshot_name(spec.name, label));
    write_snapshot(p, m, t);
    res.files.push_back(p);
  };

  if (spec.adaptive) {
    const AdaptiveSettings& as = *spec.adaptive;
    SchemeState state = spec_start(spec, problem, spec.dt.value_or(as.dt_min));
    res.records.push_back(initial_record(state));
    long count = 0;
    auto obs = [&](const SchemeState&, const RunRecord& r) { progress(spec.progress_stride, ++count, r, spec.name); };
    std::size_t next = 0;
    while (next < snaps.size() && snaps[next] <= 0.0) save(state.current().m, 0.0, snaps[next++]);
    std::vector<double> stops(snaps.begin() + static_cast<long>(next), snaps.end());
    if (stops.empty() || stops.back() < spec.t_end) stops.push_back(spec.t_end);
    for (double stop : stops) {
      if (stop <= state.t()) continue;
      AdaptiveResult seg = adaptive_run(std::move(state), *spec.scheme, as, stop, ctx, obs);
      state = std::move(seg.state);
      res.rejections += seg.rejections;
      res.records.insert(res.records.end(), seg.records.begin(), seg.records.end());
      while (next < snaps.size() && snaps[next] <= state.t()) save(state.current().m, state.t(), snaps[next++]);
    }
    res.final_m = state.current().m;
  } else {
    const double dt = *spec.dt;
    const long steps = landing_steps(spec.t_end, dt);
    std::map<long, double> snap_at;
    for (double t : snaps) snap_at.emplace(std::lround(t / dt), t);
    auto cb = [&](long step, const SchemeState& st, const RunRecord& r) {
      progress(spec.progress_stride, step, r, spec.name);
      if (auto it = snap_at.find(step); it != snap_at.end()) save(st.current().m, st.t(), it->second);
    };
    FixedRun run = run_fixed(spec_start(spec, problem, dt), *spec.scheme,
                             steps, ctx, cb);
    res.records = std::move(run.records);
    res.blew_up = run.blew_up;
    res.blowup_time = run.blowup_time;
    res.final_m = run.state.current().m;
  }
  if (write) {
    const auto p = out_file(spec.out_dir, spec.name + ".csv");
    write_records(p, res.records);
    res.files.push_back(p);
  }
  return res;
}

void write_scheme_tables(std::ostream& out, const std::vector<SchemeTable>& tables) {
  out << "scheme,dt,error,order\n";
  char buf[32];
  for (const auto& t : tables) {
    for (const auto& r : t.rows) {
      out << scheme_name(t.scheme) << ',' << format_double(r.dt) << ',' << format_double(r.error) << ',';
      if (r.order) {
        std::snprintf(buf, sizeof(buf), "%.2f", *r.order);
        out << buf;
      } else {
        out << '-';
      }
      out << '\n';
    }
  }
}

namespace {

void write_tables(const ReproduceOptions& opt, const std::string& stem, const std::vector<SchemeTable>& tables) {
  std::ostringstream all;
  write_scheme_tables(all, tables);
  write_text_file(opt.out_dir / (stem + ".csv"), all.str());
  for (const auto& t : tables) {
    std::ostringstream one;
    write_convergence(one, t.rows);
    write_text_file(opt.out_dir / (stem + "_" + std::string(scheme_name(t.scheme)) + ".csv"), one.str());
  }
}

void log(const ReproduceOptions& opt, const std::string& msg) {
  if (opt.progress_stride > 0) std::fprintf(stderr, "%s\n", msg.c_str());
}

}  // namespace

std::vector<SchemeTable> reproduce_table1(const ReproduceOptions& opt) {
  const std::vector<double> dts = opt.dts.value_or(std::vector<double>{1.6e-3, 8e-4, 4e-4, 2e-4, 1e-4, 5e-5});
  const double t_end = opt.t_end.value_or(0.01);
  const int n = opt.n.value_or(128);
  const Grid2D grid = default_grid(InitialCondition::Manufactured, n, n);
  // Only bdf3 gets exact history: its startup steps would otherwise dominate
  // the error. The others start from the initial level alone.
  const std::vector<std::pair<SchemeId, bool>> cases = {
      {SchemeId::Bdf1, false}, {SchemeId::Bdf2, false}, {SchemeId::Bdf3, true}, {SchemeId::Cn, false}};
  SchemeParams params;
  params.beta = 1.0;
  params.dealias = true;
  const Problem p = make_problem(InitialCondition::Manufactured, grid, params);
  std::vector<SchemeTable> tables;
  for (const auto& [id, seed] : cases) {
    log(opt, "table1: " + std::string(scheme_name(id)));
    tables.push_back({id, params, convergence_study(id, p, dts, t_end, {}, {opt.secant, seed, opt.observer})});
  }
  write_tables(opt, "table1", tables);
  return tables;
}

std::vector<SchemeTable> reproduce_table2(const ReproduceOptions& opt) {
  const std::vector<double> dts = opt.dts.value_or(std::vector<double>{8e-4, 4e-4, 2e-4, 1e-4, 5e-5, 2.5e-5});
  const double t_end = opt.t_end.value_or(0.01);
  const int n = opt.n.value_or(128);
  const Problem p = make_problem(InitialCondition::Smooth, default_grid(InitialCondition::Smooth, n, n), SchemeParams{});

  std::vector<double> times;
  for (double dt : dts) times.push_back(landing_time(t_end, dt));
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end(), [](double a, double b) { return std::abs(a - b) < 1e-15; }),
              times.end());
  log(opt, "table2: reference");
  const ReferenceCache cache{opt.cache_dir};
  const std::vector<VectorField> refs = cache.get(p, opt.ref_dt.value_or(1e-6), times);
  const ReferenceFn ref = [&](double t) {
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (std::abs(times[i] - t) < 1e-15) return refs[i];
    }
    throw Error("no reference stored for the requested time");
  };

  std::vector<SchemeTable> tables;
  for (SchemeId id : {SchemeId::Cn, SchemeId::Bdf1Energy, SchemeId::CnEnergy}) {
    log(opt, "table2: " + std::string(scheme_name(id)));
    tables.push_back({id, p.params, convergence_study(id, p, dts, t_end, ref, {opt.secant, false, opt.observer})});
  }
  write_tables(opt, "table2", tables);
  return tables;
}

std::vector<double> table4_times() { return {0.01, 0.02, 0.04, 0.06, 0.08, 0.10, 0.12, 0.16}; }

Comparison reproduce_table4(const ReproduceOptions& opt) {
  const int n = opt.n.value_or(64);
  const double dt = opt.dt.value_or(1e-4);
  const Problem p =
      make_problem(InitialCondition::Benchmark, default_grid(InitialCondition::Benchmark, n, n), SchemeParams{});
  std::vector<double> times = table4_times();
  if (opt.t_end) std::erase_if(times, [&](double t) { return t > *opt.t_end + 1e-12; });
  log(opt, "table4: reference");
  const std::vector<VectorField> refs = ReferenceCache{opt.cache_dir}.get(p, opt.ref_dt.value_or(1e-6), times);
  const std::vector<SchemeId> schemes = {SchemeId::SemiImplicit, SchemeId::ProjectionE, SchemeId::Cn,
                                         SchemeId::CnT2, SchemeId::LlgBdf2};
  log(opt, "table4: schemes");
  Comparison c = compare_schemes(schemes, p, dt, times, refs, {opt.secant, false, opt.observer});
  std::ostringstream out;
  write_comparison(out, c);
  write_text_file(opt.out_dir / "table4.csv", out.str());
  return c;
}

std::vector<double> blowup_times() { return {0.0, 0.001, 0.01, 0.05, 0.1, 0.2, 0.4, 0.5, 0.6}; }

BlowupResult reproduce_blowup(const ReproduceOptions& opt) {
  const int n = opt.n.value_or(64);
  const double dt = opt.dt.value_or(1e-5);
  const double t_end = opt.t_end.value_or(0.6);
  SchemeParams params;
  params.beta = 1.0;
  const Problem p = make_problem(InitialCondition::Benchmark, default_grid(InitialCondition::Benchmark, n, n), params);
  const int ox = n / 2, oy = n / 2;  // grid point at the origin

  BlowupResult res;
  std::map<long, double> snap_at;
  for (double t : blowup_times()) {
    if (t <= t_end + 1e-12) snap_at.emplace(std::lround(t / dt), t);
  }
  auto cb = [&](long step, const SchemeState& st, const RunRecord& r) {
    progress(opt.progress_stride, step, r, "blowup");
    res.origin_t.push_back(st.t());
    res.origin_m3.push_back(st.current().m[2].at(ox, oy));
    if (auto it = snap_at.find(step); it != snap_at.end()) {
      const auto path = opt.out_dir / snapshot_name("blowup", it->second);
      write_snapshot(path, st.current().m, st.t());
      res.snapshots.push_back(path);
    }
  };
  FixedRun run = run_fixed(start_state(p, SchemeId::GaussSeidel, dt, false), SchemeId::GaussSeidel,
                           landing_steps(t_end, dt), {p.forcing, opt.secant}, cb);
  if (run.blew_up) throw InstabilityError("blowup run became non-finite", run.blowup_time);
  res.records = std::move(run.records);
  write_records(opt.out_dir / "blowup.csv", res.records);
  std::ostringstream origin;
  origin << "t,m3\n";
  for (std::size_t i = 0; i < res.origin_t.size(); ++i) {
    origin << format_double(res.origin_t[i]) << ',' << format_double(res.origin_m3[i]) << '\n';
  }
  write_text_file(opt.out_dir / "blowup_origin.csv", origin.str());
  return res;
}

AdaptiveComparison reproduce_adaptive(const ReproduceOptions& opt) {
  const int n = opt.n.value_or(64);
  const double t_end = opt.t_end.value_or(0.2);
  const double dt_fixed = opt.dt.value_or(1e-4);
  const Problem p =
      make_problem(InitialCondition::Benchmark, default_grid(InitialCondition::Benchmark, n, n), SchemeParams{});
  AdaptiveComparison res;
  res.settings = opt.adaptive.value_or(AdaptiveSettings{});
  const StepContext ctx{p.forcing, opt.secant};

  log(opt, "adaptive: adaptive run");
  SchemeState s0 = start_state(p, SchemeId::CnEnergy, res.settings.dt_min, false);
  long count = 0;
  AdaptiveResult ar = adaptive_run(s0, SchemeId::CnEnergy, res.settings, t_end, ctx,
                                   [&](const SchemeState&, const RunRecord& r) {
                                     progress(opt.progress_stride, ++count, r, "adaptive");
                                   });
  res.adaptive.push_back(initial_record(s0));
  res.adaptive.insert(res.adaptive.end(), ar.records.begin(), ar.records.end());
  res.rejections = ar.rejections;

  log(opt, "adaptive: fixed-step run");
  FixedRun fr = run_fixed(start_state(p, SchemeId::CnEnergy, dt_fixed, false), SchemeId::CnEnergy,
                          landing_steps(t_end, dt_fixed), ctx,
                          [&](long step, const SchemeState&, const RunRecord& r) {
                            progress(opt.progress_stride, step, r, "fixed");
                          });
  if (fr.blew_up) throw InstabilityError("fixed-step run became non-finite", fr.blowup_time);
  res.fixed = std::move(fr.records);
  write_records(opt.out_dir / "adaptive.csv", res.adaptive);
  write_records(opt.out_dir / "adaptive_fixed.csv", res.fixed);
  return res;
}

}  // namespace llg
