#include "nlc/fields/operators.hpp"

#include <cmath>

#include "nlc/error.hpp"
#include "nlc/fields/spectral.hpp"

namespace nlc::fields {

namespace {

double axis_symbol(const Grid& g, int axis, Basis b, int k) {
  const int m = g.intervals(axis);
  if (b == Basis::Cos && k == m) return 0.0;
  if (b == Basis::Sin && (k == 0 || k == m)) return 0.0;
  const double w = g.wavenumber(axis, k);
  return -w * w;
}

}  // namespace

ScalarField derivative(const ScalarField& f, int axis) {
  const Grid& g = f.grid();
  const Basis from = f.parity().axis(axis);
  const Parity out_parity = f.parity().flipped(axis);
  const int m = g.intervals(axis);
  std::vector<double> c = to_spectral(f);
  for (int i = 0; i < g.points(0); ++i)
    for (int j = 0; j < g.points(1); ++j) {
      const int k = axis == 0 ? i : j;
      double& a = c[g.index(i, j)];
      if (k == 0 || k == m) {
        a = 0.0;
        continue;
      }
      const double w = g.wavenumber(axis, k);
      a *= (from == Basis::Cos) ? -w : w;
    }
  return from_spectral(g, out_parity, c);
}

VectorField gradient(const ScalarField& f) {
  VectorField v;
  v.kind = f.parity() == Parity::neumann() ? VectorKind::Velocity : VectorKind::Generic;
  for (int a = 0; a < f.grid().dim(); ++a) v.comp.push_back(derivative(f, a));
  return v;
}

ScalarField divergence(const VectorField& v) {
  ScalarField out = derivative(v[0], 0);
  for (std::size_t a = 1; a < v.size(); ++a) out += derivative(v[a], static_cast<int>(a));
  return out;
}

double laplacian_symbol(const Grid& grid, Parity parity, int kx, int ky) {
  double s = axis_symbol(grid, 0, parity.x, kx);
  if (grid.dim() == 2) s += axis_symbol(grid, 1, parity.y, ky);
  return s;
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  std::vector<double> c = to_spectral(f);
  for (int i = 0; i < g.points(0); ++i)
    for (int j = 0; j < g.points(1); ++j) c[g.index(i, j)] *= laplacian_symbol(g, f.parity(), i, j);
  return from_spectral(g, f.parity(), c);
}

double integrate(const ScalarField& f) {
  const std::vector<double>& w = f.grid().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i];
  return s;
}

double inner(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f.grid(), g.grid(), "inner");
  const std::vector<double>& w = f.grid().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i] * g[i];
  return s;
}

double inner(const VectorField& f, const VectorField& g) {
  double s = 0.0;
  for (std::size_t c = 0; c < f.size(); ++c) s += inner(f[c], g[c]);
  return s;
}

double l2_norm(const ScalarField& f) { return std::sqrt(inner(f, f)); }
double l2_norm(const VectorField& f) { return std::sqrt(inner(f, f)); }

ScalarField inverse_laplacian_neumann(const ScalarField& f) {
  if (f.parity() != Parity::neumann())
    throw Error(ErrorKind::ParityMismatch, "inverse_laplacian_neumann needs a cosine field");
  const Grid& g = f.grid();
  const double mean_tol = 1e-10 * g.measure() * f.max_abs();
  if (std::abs(integrate(f)) > mean_tol)
    throw Error(ErrorKind::NonZeroMean, "right-hand side of the Neumann problem has nonzero mean");
  std::vector<double> c = to_spectral(f);
  for (int i = 0; i < g.points(0); ++i)
    for (int j = 0; j < g.points(1); ++j) {
      const double s = laplacian_symbol(g, f.parity(), i, j);
      double& a = c[g.index(i, j)];
      a = (s == 0.0) ? 0.0 : a / s;
    }
  return from_spectral(g, f.parity(), c);
}

ScalarField helmholtz_solve(const ScalarField& f, double c0, double kappa) {
  const Grid& g = f.grid();
  std::vector<double> c = to_spectral(f);
  for (int i = 0; i < g.points(0); ++i)
    for (int j = 0; j < g.points(1); ++j) c[g.index(i, j)] /= c0 - kappa * laplacian_symbol(g, f.parity(), i, j);
  return from_spectral(g, f.parity(), c);
}

ScalarField dealias(const ScalarField& f) {
  const Grid& g = f.grid();
  const int kx = g.dealias_cutoff(0);
  const int ky = g.dim() == 2 ? g.dealias_cutoff(1) : 0;
  std::vector<double> c = to_spectral(f);
  for (int i = 0; i < g.points(0); ++i)
    for (int j = 0; j < g.points(1); ++j)
      if (i > kx || j > ky) c[g.index(i, j)] = 0.0;
  return from_spectral(g, f.parity(), c);
}

VectorField dealias(const VectorField& v) {
  VectorField out = v;
  for (auto& c : out.comp) c = dealias(c);
  return out;
}

}  // namespace nlc::fields
