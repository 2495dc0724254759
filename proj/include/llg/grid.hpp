#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace llg {

using Complex = std::complex<double>;

/// Uniform periodic grid on [x0, x0+lx) x [y0, y0+ly) with the Fourier
/// transform plans that go with it.
///
/// Physical arrays are row-major with x fastest: index = iy * nx + ix.
/// Spectral arrays hold the half spectrum of a real transform:
/// index = iy * (nx/2 + 1) + ikx.
///
/// The forward transform is unnormalized; the inverse carries 1/(nx*ny).
/// Copies share the same immutable plans, so a Grid2D is cheap to pass by value.
class Grid2D {
 public:
  /// Throws InvalidArgument unless nx, ny are even and >= 4 and lx, ly > 0.
  static Grid2D build(int nx, int ny, double lx, double ly, double x0 = 0.0, double y0 = 0.0);

  int nx() const;
  int ny() const;
  double lx() const;
  double ly() const;
  double x0() const;
  double y0() const;

  std::size_t size() const;           // nx * ny
  int nkx() const;                    // nx / 2 + 1
  std::size_t spectral_size() const;  // ny * nkx
  double cell_area() const;           // lx * ly / (nx * ny)

  double x(int ix) const;
  double y(int iy) const;

  /// Wavenumber tables, length nx and ny. Index j maps to (2 pi / L) * j for
  /// j < N/2 and (2 pi / L) * (j - N) otherwise.
  std::span<const double> kx() const;
  std::span<const double> ky() const;

  /// Real-to-half-complex transform; `out` has spectral_size() entries.
  void forward(std::span<const double> in, std::span<Complex> out) const;
  /// Half-complex-to-real transform including the 1/(nx*ny) factor.
  /// `in` is used as scratch and left unspecified.
  void inverse(std::span<Complex> in, std::span<double> out) const;

  bool operator==(const Grid2D& other) const;
  bool operator!=(const Grid2D& other) const { return !(*this == other); }

 private:
  struct Impl;
  explicit Grid2D(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

}  // namespace llg
