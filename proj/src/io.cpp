#include "llg/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "llg/error.hpp"

namespace llg {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

namespace {

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) throw Error("snapshot is truncated");
  return v;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, mode);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  return f;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ifstream f(path, mode);
  if (!f) throw Error("cannot open " + path.string() + " for reading");
  return f;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

void write_snapshot(std::ostream& out, const VectorField& m, double t) {
  const Grid2D& g = m.grid();
  out.write("LLGF", 4);
  put<std::uint32_t>(out, kSnapshotVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.nx()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.ny()));
  put<double>(out, g.lx());
  put<double>(out, g.ly());
  put<double>(out, t);
  for (int d = 0; d < 3; ++d) {
    const auto& v = m[d].values();
    out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
  }
  if (!out) throw Error("snapshot write failed");
}

void write_snapshot(const std::filesystem::path& path, const VectorField& m, double t) {
  std::ostringstream buf(std::ios::binary);
  write_snapshot(buf, m, t);
  write_text_file(path, buf.str());
}

Snapshot read_snapshot(std::istream& in, double x0, double y0) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "LLGF", 4) != 0) throw Error("not an LLGF snapshot");
  const auto version = get<std::uint32_t>(in);
  if (version != kSnapshotVersion) throw Error("unsupported snapshot version " + std::to_string(version));
  const auto nx = get<std::uint32_t>(in);
  const auto ny = get<std::uint32_t>(in);
  const double lx = get<double>(in);
  const double ly = get<double>(in);
  const double t = get<double>(in);
  Grid2D grid = Grid2D::build(static_cast<int>(nx), static_cast<int>(ny), lx, ly, x0, y0);
  VectorField m(grid);
  for (int d = 0; d < 3; ++d) {
    auto v = m[d].values();
    if (!in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)))) {
      throw Error("snapshot is truncated");
    }
  }
  return {t, std::move(m)};
}

Snapshot read_snapshot(const std::filesystem::path& path, double x0, double y0) {
  auto f = open_in(path, std::ios::binary);
  return read_snapshot(f, x0, y0);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  if (s == "nan" || s == "NaN") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end || s.empty()) throw Error("malformed number '" + s + "'");
  return v;
}

void write_records(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kRecordHeader << '\n';
  for (const auto& r : records) {
    out << format_double(r.t) << ',' << format_double(r.energy) << ',' << format_double(r.dissipation)
        << ',' << format_double(r.xi) << ',' << r.secant_iters << ',' << format_double(r.min_len) << ','
        << format_double(r.max_len) << ',' << format_double(r.grad_inf) << ',' << format_double(r.dt)
        << ',' << flags_to_string(r.flags) << '\n';
  }
}

void write_records(const std::filesystem::path& path, const std::vector<RunRecord>& records) {
  std::ostringstream buf;
  write_records(buf, records);
  write_text_file(path, buf.str());
}

std::vector<RunRecord> read_records(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != kRecordHeader) throw Error("record CSV has a wrong header");
  std::vector<RunRecord> out;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != 10) throw Error("record CSV row has " + std::to_string(c.size()) + " cells");
    RunRecord r;
    r.t = parse_double(c[0]);
    r.energy = parse_double(c[1]);
    r.dissipation = parse_double(c[2]);
    r.xi = parse_double(c[3]);
    r.secant_iters = std::stoi(c[4]);
    r.min_len = parse_double(c[5]);
    r.max_len = parse_double(c[6]);
    r.grad_inf = parse_double(c[7]);
    r.dt = parse_double(c[8]);
    r.flags = flags_from_string(c[9]);
    out.push_back(r);
  }
  return out;
}

std::vector<RunRecord> read_records(const std::filesystem::path& path) {
  auto f = open_in(path, std::ios::in);
  return read_records(f);
}

void write_convergence(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  out << kConvergenceHeader << '\n';
  char buf[32];
  for (const auto& r : rows) {
    out << format_double(r.dt) << ',' << format_double(r.error) << ',';
    if (r.order) {
      std::snprintf(buf, sizeof(buf), "%.2f", *r.order);
      out << buf;
    } else {
      out << '-';
    }
    out << '\n';
  }
}

void write_convergence(const std::filesystem::path& path, const std::vector<ConvergenceRow>& rows) {
  std::ostringstream buf;
  write_convergence(buf, rows);
  write_text_file(path, buf.str());
}

std::vector<ConvergenceRow> read_convergence(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != kConvergenceHeader) {
    throw Error("convergence CSV has a wrong header");
  }
  std::vector<ConvergenceRow> out;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != 3) throw Error("convergence CSV row must have 3 cells");
    ConvergenceRow r;
    r.dt = parse_double(c[0]);
    r.error = parse_double(c[1]);
    if (c[2] != "-") r.order = parse_double(c[2]);
    out.push_back(r);
  }
  return out;
}

std::vector<ConvergenceRow> read_convergence(const std::filesystem::path& path) {
  auto f = open_in(path, std::ios::in);
  return read_convergence(f);
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    auto f = open_out(tmp, std::ios::binary | std::ios::trunc);
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!f) throw Error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace llg
