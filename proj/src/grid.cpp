#include "llg/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "llg/error.hpp"

namespace llg {

namespace {

// The FFTW planner is not thread safe; execution with the new-array API is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<double> wavenumbers(int n, double length) {
  std::vector<double> k(static_cast<std::size_t>(n));
  const double scale = 2.0 * std::numbers::pi / length;
  for (int j = 0; j < n; ++j) {
    k[static_cast<std::size_t>(j)] = scale * (j < n / 2 ? j : j - n);
  }
  return k;
}

}  // namespace

struct Grid2D::Impl {
  int nx = 0;
  int ny = 0;
  double lx = 0.0;
  double ly = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  std::vector<double> kx;
  std::vector<double> ky;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  Impl() = default;
  Impl(const Impl&) = delete;
  Impl& operator=(const Impl&) = delete;
  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

Grid2D::Grid2D(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Grid2D Grid2D::build(int nx, int ny, double lx, double ly, double x0, double y0) {
  if (nx < 4 || ny < 4 || nx % 2 != 0 || ny % 2 != 0) {
    throw InvalidArgument("grid sizes must be even and at least 4, got " + std::to_string(nx) +
                          "x" + std::to_string(ny));
  }
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
    throw InvalidArgument("domain lengths must be positive and finite");
  }
  auto impl = std::make_shared<Impl>();
  impl->nx = nx;
  impl->ny = ny;
  impl->lx = lx;
  impl->ly = ly;
  impl->x0 = x0;
  impl->y0 = y0;
  impl->kx = wavenumbers(nx, lx);
  impl->ky = wavenumbers(ny, ly);

  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  const std::size_t nspec = static_cast<std::size_t>(ny) * (nx / 2 + 1);
  std::vector<double> real(n);
  std::vector<Complex> spec(nspec);
  auto* creal = real.data();
  auto* cspec = reinterpret_cast<fftw_complex*>(spec.data());
  {
    // ESTIMATE keeps the chosen algorithm, and hence every rounding, reproducible.
    std::lock_guard<std::mutex> lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    impl->r2c = fftw_plan_dft_r2c_2d(ny, nx, creal, cspec, flags);
    impl->c2r = fftw_plan_dft_c2r_2d(ny, nx, cspec, creal, flags);
  }
  if (!impl->r2c || !impl->c2r) throw Error("FFTW failed to create a plan");
  return Grid2D(std::move(impl));
}

int Grid2D::nx() const { return impl_->nx; }
int Grid2D::ny() const { return impl_->ny; }
double Grid2D::lx() const { return impl_->lx; }
double Grid2D::ly() const { return impl_->ly; }
double Grid2D::x0() const { return impl_->x0; }
double Grid2D::y0() const { return impl_->y0; }
std::size_t Grid2D::size() const { return static_cast<std::size_t>(impl_->nx) * impl_->ny; }
int Grid2D::nkx() const { return impl_->nx / 2 + 1; }
std::size_t Grid2D::spectral_size() const { return static_cast<std::size_t>(impl_->ny) * nkx(); }
double Grid2D::cell_area() const { return impl_->lx * impl_->ly / static_cast<double>(size()); }
double Grid2D::x(int ix) const { return impl_->x0 + impl_->lx * ix / impl_->nx; }
double Grid2D::y(int iy) const { return impl_->y0 + impl_->ly * iy / impl_->ny; }
std::span<const double> Grid2D::kx() const { return impl_->kx; }
std::span<const double> Grid2D::ky() const { return impl_->ky; }

void Grid2D::forward(std::span<const double> in, std::span<Complex> out) const {
  if (in.size() != size() || out.size() != spectral_size()) {
    throw InvalidArgument("forward transform: buffer size mismatch");
  }
  // FFTW's r2c does not write to its input.
  fftw_execute_dft_r2c(impl_->r2c, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void Grid2D::inverse(std::span<Complex> in, std::span<double> out) const {
  if (in.size() != spectral_size() || out.size() != size()) {
    throw InvalidArgument("inverse transform: buffer size mismatch");
  }
  fftw_execute_dft_c2r(impl_->c2r, reinterpret_cast<fftw_complex*>(in.data()), out.data());
  const double scale = 1.0 / static_cast<double>(size());
  for (double& v : out) v *= scale;
}

bool Grid2D::operator==(const Grid2D& other) const {
  if (impl_ == other.impl_) return true;
  return impl_->nx == other.impl_->nx && impl_->ny == other.impl_->ny &&
         impl_->lx == other.impl_->lx && impl_->ly == other.impl_->ly &&
         impl_->x0 == other.impl_->x0 && impl_->y0 == other.impl_->y0;
}

}  // namespace llg
