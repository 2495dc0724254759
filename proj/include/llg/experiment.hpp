#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "llg/adaptive.hpp"
#include "llg/convergence.hpp"

namespace llg {

/// One simulation: scheme, problem, stepping and where to put the output.
struct ExperimentSpec {
  std::optional<SchemeId> scheme;
  std::optional<InitialCondition> ic;
  SchemeParams params;
  int nx = 128;
  int ny = 128;
  std::optional<double> dt;  // fixed step, or first trial step when adaptive
  std::optional<AdaptiveSettings> adaptive;
  double t_end = 0.0;
  SecantSettings secant;
  std::vector<double> snapshot_times;
  std::filesystem::path out_dir;  // empty: nothing written
  std::string name = "run";
  int progress_stride = 0;  // steps between progress lines on stderr, 0 for none
  double perturb = 0.0;     // uniform random perturbation of the initial field, renormalized
  std::uint64_t seed = 0;

  /// Throws ConfigError naming the first missing or inconsistent field.
  void validate() const;
  Problem problem() const;
};

struct ExperimentResult {
  std::vector<RunRecord> records;  // initial level first
  std::optional<VectorField> final_m;
  bool blew_up = false;
  double blowup_time = 0.0;
  int rejections = 0;
  std::vector<std::filesystem::path> files;
};

/// Runs the spec and writes <name>.csv plus <name>_t<time>.llgf snapshots
/// under out_dir. Snapshot times are rounded to the nearest step for fixed
/// stepping and hit exactly when adaptive.
ExperimentResult run_experiment(const ExperimentSpec& spec);

std::string snapshot_name(const std::string& stem, double t);

/// Knobs shared by the canned reproductions; unset fields keep each driver's
/// own setup.
struct ReproduceOptions {
  std::filesystem::path out_dir = ".";
  std::filesystem::path cache_dir;  // reference cache, empty to recompute
  std::optional<double> dt;
  std::optional<double> ref_dt;
  std::optional<int> n;
  std::optional<double> t_end;
  std::optional<std::vector<double>> dts;
  SecantSettings secant;
  std::optional<AdaptiveSettings> adaptive;
  int progress_stride = 0;
  RunObserver observer;  // sees every fixed-step run of the study drivers
};

struct SchemeTable {
  SchemeId scheme;
  SchemeParams params;
  std::vector<ConvergenceRow> rows;
};

/// Long-format CSV: scheme,dt,error,order.
void write_scheme_tables(std::ostream& out, const std::vector<SchemeTable>& tables);

/// Manufactured problem, beta = gamma = 1, 128^2, t = 0.01, dealiased
/// products: bdf1, bdf2, bdf3 and cn over dt = 1.6e-3 ... 5e-5.
std::vector<SchemeTable> reproduce_table1(const ReproduceOptions& opt);

/// Smooth problem, beta = 0, 128^2, t = 0.01, RK4 reference: cn, bdf1-energy
/// and cn-energy over dt = 8e-4 ... 2.5e-5.
std::vector<SchemeTable> reproduce_table2(const ReproduceOptions& opt);

/// Benchmark problem, beta = 0, 64^2, dt = 1e-4: semi-implicit, projection-e,
/// cn, cn-t2 and llg-bdf2 against an RK4 reference at T = 0.01 ... 0.16.
Comparison reproduce_table4(const ReproduceOptions& opt);
std::vector<double> table4_times();

struct BlowupResult {
  std::vector<RunRecord> records;
  std::vector<double> origin_t;
  std::vector<double> origin_m3;
  std::vector<std::filesystem::path> snapshots;
};

/// Benchmark problem, beta = gamma = 1, 64^2, gauss-seidel to t = 0.6 with
/// snapshots at the figure times and m3 at the origin every step.
BlowupResult reproduce_blowup(const ReproduceOptions& opt);
std::vector<double> blowup_times();

struct AdaptiveComparison {
  std::vector<RunRecord> adaptive;
  std::vector<RunRecord> fixed;
  int rejections = 0;
  AdaptiveSettings settings;
};

/// Benchmark problem, beta = 0, 64^2: cn-energy with adaptive steps against
/// the same scheme at fixed dt = 1e-4.
AdaptiveComparison reproduce_adaptive(const ReproduceOptions& opt);

}  // namespace llg
