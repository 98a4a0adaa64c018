#pragma once

#include <vector>

#include "nlc/fields/field.hpp"

namespace nlc::fields {

// Expansion coefficients in the tensor cosine/sine basis, stored in the same
// (ix, iy) layout as nodal values: entry (kx, ky) multiplies
// phi_kx(x) * phi_ky(y) with phi_k = cos(k pi x / L) or sin(k pi x / L).
// Sine directions only use k = 1..M-1; the remaining slots are zero.
std::vector<double> to_spectral(const ScalarField& f);
ScalarField from_spectral(const Grid& grid, Parity parity, const std::vector<double>& coeffs);

// Discrete squared norm of tensor mode (kx, ky).
double mode_norm2(const Grid& grid, Parity parity, int kx, int ky);

// Sum of squared coefficients weighted by the discrete mode norms.
double spectral_norm2(const ScalarField& f);

}  // namespace nlc::fields
