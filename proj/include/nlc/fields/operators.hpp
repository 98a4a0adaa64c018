#pragma once

#include "nlc/fields/field.hpp"

namespace nlc::fields {

// Exact differentiation of the basis expansion; the basis flips along `axis`.
// The cosine Nyquist mode has no representable derivative and is dropped.
ScalarField derivative(const ScalarField& f, int axis);
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);

// Spectral Laplacian, equal to divergence(gradient(f)) mode by mode.
ScalarField laplacian(const ScalarField& f);
// Symbol of the Laplacian on tensor mode (kx, ky).
double laplacian_symbol(const Grid& grid, Parity parity, int kx, int ky);

double integrate(const ScalarField& f);
double inner(const ScalarField& f, const ScalarField& g);
double inner(const VectorField& f, const VectorField& g);
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& f);

// Zero-mean solution of laplacian(phi) = f for a cosine field with zero mean.
ScalarField inverse_laplacian_neumann(const ScalarField& f);
// Solves (c - kappa * laplacian) phi = f; requires c > 0, kappa >= 0.
ScalarField helmholtz_solve(const ScalarField& f, double c, double kappa);

// 2/3-rule filter: zeros every mode above the cutoff on any axis.
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& v);

}  // namespace nlc::fields
