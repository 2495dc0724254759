// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria, so a shortfall shows up in ctest.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "llg/bdf.hpp"
#include "llg/energy_fix.hpp"
#include "llg/error.hpp"
#include "llg/experiment.hpp"
#include "llg/problems.hpp"
#include "llg/schemes.hpp"
#include "llg/spectral.hpp"
#include "llg/stepper.hpp"
#include "support.hpp"

using namespace llg;

namespace {

// Tolerances.
constexpr double kOrderTol12 = 0.15;     // first and second order schemes
constexpr double kOrderTol3 = 0.3;       // third order scheme
constexpr double kErrorFactor = 3.0;     // against published errors
constexpr double kFloor = 5e-13;         // errors below this sit on the round-off floor
constexpr double kTable1MinDt = 1e-4;    // smallest step of the order window
constexpr double kTable2FromDt = 2e-4;   // published orders start here
constexpr double kCnTable2Error = 6.5e-7;
constexpr double kEnergyOrderLo = 0.9, kEnergyOrderHi = 1.3;
constexpr double kLengthTol = 1e-12;
constexpr double kEnergyLawTol = 1e-10;
constexpr int kMaxSecantIters = 10;
constexpr double kBdf1EquivTol = 1e-13;
constexpr int kRandomFields = 20;
constexpr double kSemiImplicitNanBy = 0.04;
constexpr double kProjectionMargin = 5.0;
constexpr double kGradGrowth = 10.0;
constexpr double kSignLo = 0.3, kSignHi = 0.5;
constexpr double kFinalEnergyRel = 0.01;
constexpr double kPlaneWaveTol = 1e-12;
constexpr double kParsevalRel = 1e-12;
constexpr double kPlugBackTol = 1e-12;
constexpr double kBdfExactTol = 1e-13;
constexpr double kSecantBisectTol = 1e-9;
constexpr double kManufacturedTol = 1e-12;

// Published average L-infinity errors at t = 0.01, dt = 1.6e-3 ... 5e-5.
const std::map<SchemeId, std::vector<double>> kTable1 = {
    {SchemeId::Bdf1, {3.02e-5, 1.51e-5, 7.89e-6, 3.95e-6, 1.97e-6, 9.86e-7}},
    {SchemeId::Bdf2, {3.89e-6, 9.72e-7, 2.43e-7, 6.07e-8, 1.51e-8, 3.79e-9}},
    {SchemeId::Bdf3, {6.97e-10, 9.09e-11, 1.20e-11, 1.53e-12, 2.18e-13, 9.70e-14}},
    {SchemeId::Cn, {2.03e-6, 5.06e-7, 1.26e-7, 3.15e-8, 7.87e-9, 1.96e-9}},
};

int failures = 0;
std::map<int, std::string> lines;  // printed in criterion order at the end

void report(int n, bool pass, const std::string& detail) {
  lines[n] = "criterion " + std::to_string(n) + ": " + (pass ? "PASS" : "FAIL") + "  " + detail;
  std::fprintf(stderr, "%s\n", lines[n].c_str());
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Length and energy-law bookkeeping over every run the drivers perform.
struct Monitor {
  std::mutex mu;
  double worst_length = 0.0;
  double worst_energy_law = 0.0;
  int energy_increases = 0;
  int secant_failures = 0;
  long steps = 0;
  std::string worst_length_where;

  void observe(SchemeId id, const std::vector<RunRecord>& recs) {
    std::lock_guard lock(mu);
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const RunRecord& r = recs[i];
      if (r.flags & kFlagNan) break;
      ++steps;
      if (is_length_preserving(id)) {
        const double dev = std::max(std::abs(r.min_len - 1.0), std::abs(r.max_len - 1.0));
        if (!(dev <= worst_length)) {
          worst_length = dev;
          worst_length_where = std::string(scheme_name(id));
        }
      }
      if (is_energy_scheme(id) && i > 0) {
        const double law = std::abs(r.energy - recs[i - 1].energy + r.dt * r.dissipation);
        worst_energy_law = std::max(worst_energy_law, law);
        if (r.energy > recs[i - 1].energy) ++energy_increases;
        if (r.flags & kFlagSecantFailed) ++secant_failures;
      }
    }
  }
};

bool near_factor(double got, double want, double factor) {
  return std::isfinite(got) && got > 0.0 && got <= want * factor && got >= want / factor;
}

const SchemeTable& table_of(const std::vector<SchemeTable>& ts, SchemeId id) {
  for (const auto& t : ts)
    if (t.scheme == id) return t;
  throw Error("missing scheme table");
}

void criterion1(const ReproduceOptions& opt) {
  const auto tables = reproduce_table1(opt);
  bool pass = true;
  std::string detail;
  for (const auto& [id, published] : kTable1) {
    const SchemeTable& t = table_of(tables, id);
    const double target = id == SchemeId::Bdf1 ? 1.0 : id == SchemeId::Bdf3 ? 3.0 : 2.0;
    const double tol = id == SchemeId::Bdf3 ? kOrderTol3 : kOrderTol12;
    double lo = 1e9, hi = -1e9, worst_ratio = 1.0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const ConvergenceRow& r = t.rows[i];
      if (r.dt < kTable1MinDt * (1 - 1e-9)) continue;
      if (r.error < kFloor) continue;
      if (!near_factor(r.error, published[i], kErrorFactor)) pass = false;
      worst_ratio = std::max({worst_ratio, r.error / published[i], published[i] / r.error});
      if (i == 0) continue;
      if (!r.order) {
        pass = false;
        continue;
      }
      lo = std::min(lo, *r.order);
      hi = std::max(hi, *r.order);
      if (std::abs(*r.order - target) > tol) pass = false;
    }
    detail += std::string(scheme_name(id)) + fmt(" orders [%.2f, %.2f] worst ratio %.2f; ", lo, hi, worst_ratio);
  }
  report(1, pass, detail);
}

void criterion2(const ReproduceOptions& opt) {
  const auto tables = reproduce_table2(opt);
  const SchemeTable& cn = table_of(tables, SchemeId::Cn);
  const SchemeTable& e1 = table_of(tables, SchemeId::Bdf1Energy);
  const SchemeTable& e2 = table_of(tables, SchemeId::CnEnergy);
  bool pass = true;
  double cn_lo = 1e9, cn_hi = -1e9, e1_lo = 1e9, e1_hi = -1e9, cn_at = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < cn.rows.size(); ++i) {
    const double dt = cn.rows[i].dt;
    if (std::abs(dt - 1e-4) < 1e-12) cn_at = cn.rows[i].error;
    if (!(e2.rows[i].error < e1.rows[i].error)) pass = false;
    if (dt > kTable2FromDt * (1 + 1e-9)) continue;
    const auto& co = cn.rows[i].order;
    const auto& eo = e1.rows[i].order;
    if (!co || !eo) {
      pass = false;
      continue;
    }
    cn_lo = std::min(cn_lo, *co), cn_hi = std::max(cn_hi, *co);
    e1_lo = std::min(e1_lo, *eo), e1_hi = std::max(e1_hi, *eo);
    if (std::abs(*co - 2.0) > kOrderTol12) pass = false;
    if (*eo < kEnergyOrderLo || *eo > kEnergyOrderHi) pass = false;
  }
  if (!near_factor(cn_at, kCnTable2Error, kErrorFactor)) pass = false;
  report(2, pass,
         fmt("cn orders [%.2f, %.2f], cn error at 1e-4 %.3g; ", cn_lo, cn_hi, cn_at) +
             fmt("bdf1-energy orders [%.2f, %.2f]; cn-energy below bdf1-energy at every dt", e1_lo, e1_hi));
}

void criterion5() {
  const Grid2D g = test::periodic_grid(32);
  double worst = 0.0;
  for (int s = 0; s < kRandomFields; ++s) {
    const VectorField m = test::random_unit_field(g, 1000 + s, 1 + s % 3);
    const double dt = 1e-4 * (1 + s);
    const StepOutcome o = step(initial_state(m, 0.0, dt, SchemeParams{}, Formulation::TypeI), SchemeId::Bdf1, {});
    const VectorField expect = normalize_pointwise(
        VectorField(helmholtz_solve(m[0], dt), helmholtz_solve(m[1], dt), helmholtz_solve(m[2], dt)));
    worst = std::max(worst, test::max_diff(o.state.current().m, expect));
  }
  report(5, worst <= kBdf1EquivTol, fmt("max deviation %.3g over %g random fields", worst, kRandomFields));
}

void criterion6(const ReproduceOptions& opt, Monitor& mon) {
  ReproduceOptions o = opt;
  o.observer = [&](SchemeId id, double, const std::vector<RunRecord>& r) { mon.observe(id, r); };
  const Comparison c = reproduce_table4(o);
  auto index = [&](SchemeId id) {
    return static_cast<std::size_t>(std::find(c.schemes.begin(), c.schemes.end(), id) - c.schemes.begin());
  };
  bool pass = true;
  std::string detail;
  const double si_nan = c.blowup_times[index(SchemeId::SemiImplicit)];
  if (!(si_nan <= kSemiImplicitNanBy + 1e-12)) pass = false;
  detail += fmt("semi-implicit NaN at t = %.3g; ", si_nan);
  for (std::size_t s = 0; s < c.schemes.size(); ++s) {
    if (c.schemes[s] == SchemeId::SemiImplicit) continue;
    bool finite = std::isnan(c.blowup_times[s]);
    for (double e : c.errors[s]) finite = finite && std::isfinite(e);
    if (!finite) {
      pass = false;
      detail += std::string(scheme_name(c.schemes[s])) + " not finite; ";
    }
  }
  const std::size_t pe = index(SchemeId::ProjectionE);
  for (SchemeId id : {SchemeId::Cn, SchemeId::CnT2, SchemeId::LlgBdf2}) {
    const std::size_t s = index(id);
    double worst = std::numeric_limits<double>::infinity(), worst_t = 0.0;
    for (std::size_t i = 0; i < c.times.size(); ++i) {
      const double ratio = c.errors[pe][i] / c.errors[s][i];
      if (!(ratio >= worst)) {
        worst = ratio;
        worst_t = c.times[i];
      }
    }
    if (!(worst >= kProjectionMargin)) pass = false;
    detail += std::string(scheme_name(id)) + fmt(" min margin %.2fx at t = %.2f; ", worst, worst_t);
  }
  report(6, pass, detail);
}

void criterion7(const ReproduceOptions& opt, Monitor& mon) {
  const BlowupResult b = reproduce_blowup(opt);
  mon.observe(SchemeId::GaussSeidel, b.records);
  const double g0 = b.records.front().grad_inf;
  double gmax = g0;
  for (const RunRecord& r : b.records)
    if (std::isfinite(r.grad_inf)) gmax = std::max(gmax, r.grad_inf);
  double t_cross = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 1; i < b.origin_t.size(); ++i) {
    if (b.origin_m3[i - 1] > 0.0 && b.origin_m3[i] <= 0.0) {
      t_cross = b.origin_t[i];
      break;
    }
  }
  const bool starts_up = !b.origin_m3.empty() && b.origin_m3.front() > 0.0;
  const bool growth = gmax >= kGradGrowth * g0;
  const bool sign = starts_up && t_cross >= kSignLo && t_cross <= kSignHi;
  report(7, growth && sign,
         fmt("grad growth %.2fx, origin m3 from %.3f to %.3f, ", gmax / g0, b.origin_m3.front(), b.origin_m3.back()) +
             (std::isnan(t_cross) ? std::string("no sign change") : fmt("sign change at t = %.4f", t_cross)));
}

void criterion8(const ReproduceOptions& opt, Monitor& mon, int& max_iters) {
  const AdaptiveComparison a = reproduce_adaptive(opt);
  mon.observe(SchemeId::CnEnergy, a.adaptive);
  mon.observe(SchemeId::CnEnergy, a.fixed);
  const AdaptiveSettings& s = a.settings;
  bool xi_ok = true, dt_ok = true;
  double worst_xi = 0.0;
  for (std::size_t i = 1; i < a.adaptive.size(); ++i) {
    const RunRecord& r = a.adaptive[i];
    max_iters = std::max(max_iters, r.secant_iters);
    if ((r.flags & kFlagDtMinForced) == 0) {
      worst_xi = std::max(worst_xi, std::abs(r.xi));
      if (std::abs(r.xi) > s.tol) xi_ok = false;
    }
    const bool truncated = r.flags & kFlagTruncated;
    if (r.dt > s.dt_max * (1 + 1e-12) || (!truncated && r.dt < s.dt_min * (1 - 1e-12))) dt_ok = false;
  }
  for (const RunRecord& r : a.fixed) max_iters = std::max(max_iters, r.secant_iters);
  const double ea = a.adaptive.back().energy, ef = a.fixed.back().energy;
  const double rel = std::abs(ea - ef) / std::abs(ef);
  const bool same_t = std::abs(a.adaptive.back().t - a.fixed.back().t) < 1e-9;
  report(8, xi_ok && dt_ok && same_t && rel <= kFinalEnergyRel,
         fmt("max |xi| %.3g (tol %.3g), ", worst_xi, s.tol) + (dt_ok ? "dt within bounds, " : "dt out of bounds, ") +
             fmt("final energy %.6g vs %.6g (rel %.2g)", ea, ef, rel) +
             fmt(", %g rejections", a.rejections));
}

void criterion3(const Monitor& mon) {
  report(3, mon.worst_length <= kLengthTol,
         fmt("max ||m|-1| %.3g over %g records", mon.worst_length, static_cast<double>(mon.steps)) +
             (mon.worst_length_where.empty() ? "" : " (worst in " + mon.worst_length_where + ")"));
}

void criterion4(const Monitor& mon, int max_iters) {
  const bool pass = mon.worst_energy_law <= kEnergyLawTol && mon.energy_increases == 0 && mon.secant_failures == 0 &&
                    max_iters <= kMaxSecantIters;
  report(4, pass,
         fmt("max |E1 - E0 + dt D| %.3g, %g energy increases, ", mon.worst_energy_law, mon.energy_increases) +
             fmt("%g secant failures, at most %g secant iterations on the benchmark", mon.secant_failures, max_iters));
}

// Residual-free property checks, each reduced to a single worst number.
void criterion9() {
  const Grid2D g = test::periodic_grid(32);
  std::string detail;
  bool pass = true;

  double plane = 0.0;
  for (int p = 0; p <= 5; ++p)
    for (int q = 0; q <= 5; ++q) {
      const auto f = ScalarField::sample(g, [&](double x, double y) { return std::cos(p * x) * std::sin(q * y + 0.3); });
      plane = std::max(plane, test::max_diff(laplacian(f), -double(p * p + q * q) * f));
    }
  pass = pass && plane <= kPlaneWaveTol;
  detail += fmt("plane wave %.2g; ", plane);

  const VectorField m = test::random_unit_field(g, 7);
  const double e = energy(m);
  const double parseval = std::abs(energy_spectral(m) - e) / e;
  pass = pass && parseval <= kParsevalRel;
  detail += fmt("Parseval %.2g; ", parseval);

  double plug = 0.0;
  const double dt = 1e-2;
  for (int k = 1; k <= 3; ++k) {
    SchemeState s = initial_state(test::random_unit_field(g, 20), 0.0, dt, SchemeParams{}, Formulation::TypeI);
    for (int j = 1; j < k; ++j)
      s = advance(s, test::random_unit_field(g, 20 + j), grad_norm_sq(test::random_unit_field(g, 30 + j)), dt);
    const VectorField mtilde = 1.1 * test::random_unit_field(g, 40);
    const BdfTable& t = BdfTable::of(k);
    const Corrected c = corrector_bdf(mtilde, s, t);
    VectorField res = t.alpha * (c.m - mtilde);
    res.add_scaled(-dt, c.lambda * c.m);
    for (std::size_t j = 0; j < t.b_weights.size(); ++j)
      res.add_scaled(dt * t.b_weights[j], s.history[j].lambda * s.history[j].m);
    plug = std::max(plug, test::max_diff(res, VectorField(g)));
  }
  pass = pass && plug <= kPlugBackTol;
  detail += fmt("plug-back %.2g; ", plug);

  double exact = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const BdfTable& t = BdfTable::of(k);
    for (int deg = 0; deg <= k; ++deg) {
      double lhs = t.alpha;
      for (std::size_t j = 0; j < t.a_weights.size(); ++j) lhs -= t.a_weights[j] * std::pow(-double(j), deg);
      exact = std::max(exact, std::abs(lhs - deg));
    }
    auto extrap = [&](const std::vector<double>& w, int below) {
      for (int deg = 0; deg < below; ++deg) {
        double v = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) v += w[j] * std::pow(-double(j), deg);
        exact = std::max(exact, std::abs(v - 1.0));
      }
    };
    extrap(t.bext_weights, k);
    extrap(t.b_weights, k - 1);
  }
  pass = pass && exact <= kBdfExactTol;
  detail += fmt("BDF exactness %.2g; ", exact);

  const VectorField u = test::random_unit_field(g, 3);
  const double d = dissipation(u), sdt = 1e-3;
  const double prev = energy(apply_xi(u, 0.01)) + sdt * d;
  auto f = [&](double xi) { return residual(xi, u, prev, d, sdt); };
  SecantSettings ss;
  ss.tol = 1e-13;
  const XiOutcome out = secant_solve(u, prev, d, sdt, ss);
  double lo = out.xi - 0.05, hi = out.xi + 0.05, flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi), fm = f(mid);
    if ((fm > 0) == (flo > 0)) lo = mid, flo = fm; else hi = mid;
  }
  const double secant = std::abs(out.xi - 0.5 * (lo + hi));
  pass = pass && out.converged && secant <= kSecantBisectTol;
  detail += fmt("secant vs bisection %.2g; ", secant);

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uni(0.0, 2 * std::numbers::pi);
  double manu = 0.0;
  for (int n = 0; n < 100; ++n) {
    const double x = uni(rng), y = uni(rng), t = 0.01 * uni(rng), beta = 0.7, gamma = 1.3;
    const auto mv = ManufacturedSolution::value(x, y, t);
    const auto lap = ManufacturedSolution::laplacian(x, y, t);
    const auto gf = ManufacturedSolution::forcing(x, y, t, beta, gamma);
    const auto mt = ManufacturedSolution::time_derivative(x, y, t);
    const double gs = ManufacturedSolution::grad_sq(x, y, t);
    const std::array<double, 3> cr{mv[1] * lap[2] - mv[2] * lap[1], mv[2] * lap[0] - mv[0] * lap[2],
                                   mv[0] * lap[1] - mv[1] * lap[0]};
    for (int i = 0; i < 3; ++i)
      manu = std::max(manu, std::abs(mt[i] - (-beta * cr[i] + gamma * (lap[i] + gs * mv[i]) + gf[i])));
  }
  pass = pass && manu <= kManufacturedTol;
  detail += fmt("manufactured residual %.2g", manu);
  report(9, pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::string cache, out = "acceptance_out";
  app.add_option("--cache", cache, "reference cache directory");
  app.add_option("--out", out, "directory for reproduction outputs");
  CLI11_PARSE(app, argc, argv);

  ReproduceOptions opt;
  opt.out_dir = out;
  opt.cache_dir = cache;
  std::filesystem::create_directories(opt.out_dir);
  if (!cache.empty()) std::filesystem::create_directories(opt.cache_dir);

  Monitor mon;
  ReproduceOptions watched = opt;
  watched.observer = [&](SchemeId id, double, const std::vector<RunRecord>& r) { mon.observe(id, r); };
  int max_iters = 0;
  try {
    criterion1(watched);
    criterion2(watched);
    criterion5();
    criterion6(opt, mon);
    criterion7(opt, mon);
    criterion8(opt, mon, max_iters);
    criterion3(mon);
    criterion4(mon, max_iters);
    criterion9();
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 100;
  }
  for (const auto& [n, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}
