#include "llg/spectral.hpp"

#include <cmath>

#include "llg/error.hpp"

namespace llg {

Spectrum forward(const ScalarField& f) {
  const Grid2D& g = f.grid();
  Spectrum s(g.spectral_size());
  g.forward(f.values(), s);
  return s;
}

ScalarField inverse(const Grid2D& grid, Spectrum s) {
  ScalarField out(grid);
  grid.inverse(s, out.values());
  return out;
}

void apply_laplacian(const Grid2D& grid, Spectrum& s) {
  const auto kx = grid.kx();
  const auto ky = grid.ky();
  const int nkx = grid.nkx();
  for (int iy = 0; iy < grid.ny(); ++iy) {
    const double ky2 = ky[iy] * ky[iy];
    Complex* row = s.data() + static_cast<std::size_t>(iy) * nkx;
    for (int ix = 0; ix < nkx; ++ix) row[ix] *= -(kx[ix] * kx[ix] + ky2);
  }
}

void apply_helmholtz_inverse(const Grid2D& grid, Spectrum& s, double c) {
  if (!(c > 0.0)) throw InvalidArgument("helmholtz_solve requires c > 0");
  const auto kx = grid.kx();
  const auto ky = grid.ky();
  const int nkx = grid.nkx();
  for (int iy = 0; iy < grid.ny(); ++iy) {
    const double ky2 = ky[iy] * ky[iy];
    Complex* row = s.data() + static_cast<std::size_t>(iy) * nkx;
    for (int ix = 0; ix < nkx; ++ix) row[ix] /= 1.0 + c * (kx[ix] * kx[ix] + ky2);
  }
}

void apply_dx(const Grid2D& grid, Spectrum& s) {
  const auto kx = grid.kx();
  const int nkx = grid.nkx();
  const int nyq = grid.nx() / 2;
  for (int iy = 0; iy < grid.ny(); ++iy) {
    Complex* row = s.data() + static_cast<std::size_t>(iy) * nkx;
    for (int ix = 0; ix < nkx; ++ix) {
      row[ix] = ix == nyq ? Complex(0.0) : Complex(-kx[ix] * row[ix].imag(), kx[ix] * row[ix].real());
    }
  }
}

void apply_dy(const Grid2D& grid, Spectrum& s) {
  const auto ky = grid.ky();
  const int nkx = grid.nkx();
  const int nyq = grid.ny() / 2;
  for (int iy = 0; iy < grid.ny(); ++iy) {
    Complex* row = s.data() + static_cast<std::size_t>(iy) * nkx;
    const double k = iy == nyq ? 0.0 : ky[iy];
    for (int ix = 0; ix < nkx; ++ix) row[ix] = Complex(-k * row[ix].imag(), k * row[ix].real());
  }
}

ScalarField laplacian(const ScalarField& f) {
  Spectrum s = forward(f);
  apply_laplacian(f.grid(), s);
  return inverse(f.grid(), std::move(s));
}

std::pair<ScalarField, ScalarField> gradient(const ScalarField& f) {
  const Spectrum s = forward(f);
  Spectrum sx = s;
  Spectrum sy = s;
  apply_dx(f.grid(), sx);
  apply_dy(f.grid(), sy);
  return {inverse(f.grid(), std::move(sx)), inverse(f.grid(), std::move(sy))};
}

ScalarField helmholtz_solve(const ScalarField& f, double c) {
  Spectrum s = forward(f);
  apply_helmholtz_inverse(f.grid(), s, c);
  return inverse(f.grid(), std::move(s));
}

Derivatives derivatives(const ScalarField& f) {
  const Grid2D& g = f.grid();
  const Spectrum s = forward(f);
  Spectrum sl = s;
  Spectrum sx = s;
  Spectrum sy = s;
  apply_laplacian(g, sl);
  apply_dx(g, sx);
  apply_dy(g, sy);
  return {inverse(g, std::move(sl)), inverse(g, std::move(sx)), inverse(g, std::move(sy))};
}

double spectral_power(const Grid2D& grid, const Spectrum& s) {
  const int nkx = grid.nkx();
  const int nyq = grid.nx() / 2;
  double total = 0.0;
  for (int iy = 0; iy < grid.ny(); ++iy) {
    const Complex* row = s.data() + static_cast<std::size_t>(iy) * nkx;
    for (int ix = 0; ix < nkx; ++ix) {
      // Columns 1..nx/2-1 stand for themselves and their conjugate partners.
      const double w = (ix == 0 || ix == nyq) ? 1.0 : 2.0;
      total += w * std::norm(row[ix]);
    }
  }
  return total;
}

ScalarField truncate_two_thirds(const ScalarField& f) {
  const Grid2D& g = f.grid();
  Spectrum s = forward(f);
  const int nkx = g.nkx();
  const int cx = g.nx() / 3;
  const int cy = g.ny() / 3;
  for (int iy = 0; iy < g.ny(); ++iy) {
    const int jy = iy <= g.ny() / 2 ? iy : g.ny() - iy;
    Complex* row = s.data() + static_cast<std::size_t>(iy) * nkx;
    for (int ix = 0; ix < nkx; ++ix) {
      if (ix > cx || jy > cy) row[ix] = 0.0;
    }
  }
  return inverse(g, std::move(s));
}

}  // namespace llg
