#pragma once

#include <utility>
#include <vector>

#include "llg/grid.hpp"
#include "llg/scalar_field.hpp"

namespace llg {

using Spectrum = std::vector<Complex>;

Spectrum forward(const ScalarField& f);
ScalarField inverse(const Grid2D& grid, Spectrum s);

ScalarField laplacian(const ScalarField& f);
std::pair<ScalarField, ScalarField> gradient(const ScalarField& f);

/// Solves (I - c*Lap) u = f mode by mode. Requires c > 0.
ScalarField helmholtz_solve(const ScalarField& f, double c);

/// Laplacian and both first derivatives from a single forward transform.
struct Derivatives {
  ScalarField lap;
  ScalarField dx;
  ScalarField dy;
};
Derivatives derivatives(const ScalarField& f);

// In-place spectral multipliers. First derivatives drop the Nyquist mode so
// that real input gives real output.
void apply_laplacian(const Grid2D& grid, Spectrum& s);
void apply_helmholtz_inverse(const Grid2D& grid, Spectrum& s, double c);
void apply_dx(const Grid2D& grid, Spectrum& s);
void apply_dy(const Grid2D& grid, Spectrum& s);

/// Sum of |coefficient|^2 over the full (Hermitian) spectrum.
double spectral_power(const Grid2D& grid, const Spectrum& s);

/// Zeroes every mode outside the central 2/3 band. Used only when dealiasing
/// is switched on.
ScalarField truncate_two_thirds(const ScalarField& f);

}  // namespace llg
