#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "llg/config.hpp"
#include "llg/error.hpp"

namespace {

using namespace llg;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

ReproduceOptions reproduce_options(const Config& c) {
  ReproduceOptions o;
  o.out_dir = c.spec.out_dir.empty() ? std::filesystem::path(".") : c.spec.out_dir;
  o.cache_dir = c.cache_dir;
  o.dt = c.spec.dt;
  o.ref_dt = c.ref_dt;
  if (c.nx_set) o.n = c.spec.nx;
  if (c.spec.t_end > 0.0) o.t_end = c.spec.t_end;
  if (!c.dts.empty()) o.dts = c.dts;
  o.secant = c.spec.secant;
  o.adaptive = c.spec.adaptive;
  o.progress_stride = c.spec.progress_stride;
  return o;
}

std::filesystem::path out_dir(const Config& c) {
  return c.spec.out_dir.empty() ? std::filesystem::path(".") : c.spec.out_dir;
}

int cmd_run(const Config& c) {
  ExperimentSpec spec = c.spec;
  if (spec.out_dir.empty()) spec.out_dir = ".";
  ExperimentResult res;
  res = run_experiment(spec);
  const RunRecord& last = res.records.back();
  std::printf("t=%s energy=%s steps=%zu rejections=%d\n", format_double(last.t).c_str(),
              format_double(last.energy).c_str(), res.records.size() - 1, res.rejections);
  for (const auto& f : res.files) std::printf("wrote %s\n", f.string().c_str());
  if (res.blew_up) {
    std::fprintf(stderr, "error: solution became non-finite at t=%g\n", res.blowup_time);
    return kExitFailure;
  }
  return 0;
}

int cmd_converge(const Config& c) {
  const Problem p = c.spec.problem();
  ReferenceFn ref;
  std::vector<VectorField> refs;
  std::vector<double> times;
  if (!p.exact) {
    for (double dt : c.dts) times.push_back(landing_time(c.spec.t_end, dt));
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    refs = ReferenceCache{c.cache_dir}.get(p, c.ref_dt, times);
    ref = [&](double t) {
      for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] == t) return refs[i];
      }
      throw Error("missing reference time");
    };
  }
  const auto rows = convergence_study(*c.spec.scheme, p, c.dts, c.spec.t_end, ref, {c.spec.secant, true, {}});
  std::ostringstream out;
  write_convergence(out, rows);
  const auto path = out_dir(c) / (c.spec.name + "_convergence.csv");
  write_text_file(path, out.str());
  std::cout << out.str();
  std::fprintf(stderr, "wrote %s\n", path.string().c_str());
  return 0;
}

int cmd_compare(const Config& c) {
  const Problem p = c.spec.problem();
  std::vector<double> times = c.times;
  std::sort(times.begin(), times.end());
  const auto refs = ReferenceCache{c.cache_dir}.get(p, c.ref_dt, times);
  const Comparison cmp = compare_schemes(c.schemes, p, *c.spec.dt, times, refs, {c.spec.secant, true, {}});
  std::ostringstream out;
  write_comparison(out, cmp);
  const auto path = out_dir(c) / (c.spec.name + "_compare.csv");
  write_text_file(path, out.str());
  std::cout << out.str();
  std::fprintf(stderr, "wrote %s\n", path.string().c_str());
  return 0;
}

int cmd_reproduce(const Config& c) {
  const ReproduceOptions o = reproduce_options(c);
  std::ostringstream out;
  if (c.target == "table1") {
    write_scheme_tables(out, reproduce_table1(o));
  } else if (c.target == "table2") {
    write_scheme_tables(out, reproduce_table2(o));
  } else if (c.target == "table4") {
    write_comparison(out, reproduce_table4(o));
  } else if (c.target == "blowup") {
    const BlowupResult r = reproduce_blowup(o);
    out << "t,grad_inf\n";
    for (const auto& rec : r.records) out << format_double(rec.t) << ',' << format_double(rec.grad_inf) << '\n';
  } else {
    const AdaptiveComparison r = reproduce_adaptive(o);
    out << "adaptive_steps," << r.adaptive.size() - 1 << "\nrejections," << r.rejections
        << "\nfinal_energy_adaptive," << format_double(r.adaptive.back().energy) << "\nfinal_energy_fixed,"
        << format_double(r.fixed.back().energy) << '\n';
  }
  std::cout << out.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  try {
    std::string help;
    if (!parse_cli(argc, argv, cfg, help)) {
      std::cout << help;
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  try {
    switch (cfg.command) {
      case Command::Run: return cmd_run(cfg);
      case Command::Converge: return cmd_converge(cfg);
      case Command::Compare: return cmd_compare(cfg);
      case Command::Reproduce: return cmd_reproduce(cfg);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitFailure;
}
