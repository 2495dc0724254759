#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "llg/field.hpp"

namespace llg {

/// Field snapshot. Binary layout, little-endian:
///   "LLGF", u32 version = 1, u32 nx, u32 ny, f64 lx, f64 ly, f64 t,
///   then m1, m2, m3 as row-major nx*ny f64 arrays.
struct Snapshot {
  double t = 0.0;
  VectorField m;
};

inline constexpr std::uint32_t kSnapshotVersion = 1;

void write_snapshot(std::ostream& out, const VectorField& m, double t);
void write_snapshot(const std::filesystem::path& path, const VectorField& m, double t);
/// The grid origin is not stored; it is supplied by the caller (0 by default).
Snapshot read_snapshot(std::istream& in, double x0 = 0.0, double y0 = 0.0);
Snapshot read_snapshot(const std::filesystem::path& path, double x0 = 0.0, double y0 = 0.0);

inline constexpr const char* kRecordHeader =
    "t,energy,dissipation,xi,secant_iters,min_len,max_len,grad_inf,dt,flags";
inline constexpr const char* kConvergenceHeader = "dt,error,order";

/// Shortest text that parses back to exactly the same double; nan/inf spelled out.
std::string format_double(double v);
double parse_double(const std::string& s);

void write_records(std::ostream& out, const std::vector<RunRecord>& records);
void write_records(const std::filesystem::path& path, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_records(std::istream& in);
std::vector<RunRecord> read_records(const std::filesystem::path& path);

/// One line of a dt/error/order table. A blown-up run has error NaN; an
/// undefined order (first row, or a zero/NaN error) is empty.
struct ConvergenceRow {
  double dt = 0.0;
  double error = 0.0;
  std::optional<double> order;
};

/// Order cells are written with two decimals, undefined ones as "-".
void write_convergence(std::ostream& out, const std::vector<ConvergenceRow>& rows);
void write_convergence(const std::filesystem::path& path, const std::vector<ConvergenceRow>& rows);
std::vector<ConvergenceRow> read_convergence(std::istream& in);
std::vector<ConvergenceRow> read_convergence(const std::filesystem::path& path);

/// Writes via a temporary file and rename so readers never see partial output.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace llg
