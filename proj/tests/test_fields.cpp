#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "nlc/error.hpp"
#include "nlc/fields/operators.hpp"
#include "nlc/fields/snapshot.hpp"
#include "nlc/fields/spectral.hpp"
#include "support.hpp"

using namespace nlc::fields;
using testing::kPi;
using testing::max_abs_diff;

namespace {

std::vector<Grid> sample_grids() {
  return {Grid::line(8, 2 * kPi), Grid::line(32, 3.0), Grid::box(16, 8, 2 * kPi, 2 * kPi), Grid::box(32, 16, 2.0, 5.0)};
}

std::vector<Parity> parities(int dim) {
  if (dim == 1) return {Parity::neumann(), Parity::dirichlet(1)};
  return {Parity::neumann(), Parity::velocity(0), Parity::velocity(1), Parity::dirichlet(2)};
}

// Eighth-order central first derivative at interior node i of a 1D field.
double fd8(const ScalarField& f, int i, double h) {
  static const double c[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  double s = 0.0;
  for (int k = 1; k <= 4; ++k) s += c[k - 1] * (f[i + k] - f[i - k]);
  return s / h;
}

}  // namespace

TEST_CASE("grid: quadrature weights sum to the box measure") {
  for (const Grid& g : sample_grids()) {
    double s = 0.0;
    for (double w : g.weights()) s += w;
    CHECK(std::abs(s - g.measure()) <= 1e-12 * g.measure());
  }
}

TEST_CASE("grid: invalid extents and resolutions are rejected") {
  CHECK_THROWS_AS(Grid::line(4, 1.0), nlc::Error);
  CHECK_THROWS_AS(Grid::line(12, 1.0), nlc::Error);
  CHECK_THROWS_AS(Grid::line(16, 0.0), nlc::Error);
  CHECK_THROWS_AS(Grid::box(16, 16, 1.0, -1.0), nlc::Error);
}

TEST_CASE("transform round trip reproduces nodal values") {
  std::mt19937_64 rng(7);
  for (const Grid& g : sample_grids())
    for (Parity p : parities(g.dim())) {
      ScalarField f = testing::random_nodal(g, p, rng);
      ScalarField back = from_spectral(g, p, to_spectral(f));
      CHECK(max_abs_diff(f, back) <= 1e-12 * f.max_abs());
    }
}

TEST_CASE("Parseval: nodal quadrature of f^2 equals the coefficient sum") {
  std::mt19937_64 rng(11);
  for (const Grid& g : sample_grids())
    for (Parity p : parities(g.dim())) {
      ScalarField f = testing::random_nodal(g, p, rng);
      const double nodal = integrate(f * f);
      CHECK(std::abs(nodal - spectral_norm2(f)) <= 1e-11 * nodal);
    }
}

TEST_CASE("sine fields vanish at boundary nodes") {
  std::mt19937_64 rng(3);
  Grid g = Grid::box(16, 16, 2 * kPi, 2 * kPi);
  for (Parity p : {Parity::velocity(0), Parity::velocity(1), Parity::dirichlet(2)}) {
    ScalarField f = testing::random_band_limited(g, p, 15, rng);
    for (int i = 0; i < g.points(0); ++i)
      for (int j = 0; j < g.points(1); ++j) {
        const bool wall_x = (i == 0 || i == g.points(0) - 1) && p.x == Basis::Sin;
        const bool wall_y = (j == 0 || j == g.points(1) - 1) && p.y == Basis::Sin;
        if (wall_x || wall_y) CHECK(std::abs(f[g.index(i, j)]) <= 1e-11 * f.max_abs());
      }
  }
}

TEST_CASE("gradient: constants and the first cosine mode") {
  Grid g = Grid::box(16, 16, 3.0, 2.0);
  VectorField zero = gradient(ScalarField::constant(g, 4.2));
  CHECK(zero[0].max_abs() <= 1e-12);
  CHECK(zero[1].max_abs() <= 1e-12);

  const double L = g.extent(0);
  ScalarField f = ScalarField::sample(g, Parity::neumann(), [&](double x, double) { return std::cos(kPi * x / L); });
  ScalarField expected = ScalarField::sample(g, Parity::velocity(0),
                                             [&](double x, double) { return -(kPi / L) * std::sin(kPi * x / L); });
  VectorField df = gradient(f);
  CHECK(df[0].parity() == Parity::velocity(0));
  CHECK(max_abs_diff(df[0], expected) <= 1e-12);
  CHECK(df[1].max_abs() <= 1e-12);
}

TEST_CASE("gradient matches an eighth-order finite-difference oracle") {
  std::mt19937_64 rng(5);
  double previous = 0.0;
  for (int n : {64, 128}) {
    Grid g = Grid::line(n, 2 * kPi);
    // Same function on both grids: coefficients drawn once per mode.
    std::mt19937_64 local(rng);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double a[5];
    for (double& v : a) v = u(local);
    ScalarField f = ScalarField::sample(g, Parity::neumann(), [&](double x, double) {
      double s = 0.0;
      for (int k = 0; k < 5; ++k) s += a[k] * std::cos(k * x / 2.0);
      return s;
    });
    ScalarField df = derivative(f, 0);
    const double h = g.spacing(0);
    double err = 0.0;
    for (int i = 4; i < n - 4; ++i) err = std::max(err, std::abs(df[i] - fd8(f, i, h)));
    CHECK(err <= 1e-6);
    if (previous > 0.0) CHECK(previous / err >= std::pow(2.0, 7.0));
    previous = err;
  }
}

TEST_CASE("divergence: analytic oracle and div(grad f) = laplacian f") {
  Grid g = Grid::box(32, 16, 2 * kPi, 3.0);
  const double L = g.extent(0);
  VectorField v = VectorField::velocity_zero(g);
  v[0] = ScalarField::sample(g, Parity::velocity(0), [&](double x, double) { return std::sin(kPi * x / L); });
  ScalarField expected = ScalarField::sample(g, Parity::neumann(), [&](double x, double) { return (kPi / L) * std::cos(kPi * x / L); });
  CHECK(max_abs_diff(divergence(v), expected) <= 1e-12);
  CHECK(divergence(VectorField::velocity_zero(g)).max_abs() == 0.0);

  std::mt19937_64 rng(17);
  for (const Grid& gg : sample_grids())
    for (Parity p : parities(gg.dim())) {
      ScalarField f = testing::random_nodal(gg, p, rng);
      ScalarField lap = laplacian(f);
      CHECK(max_abs_diff(divergence(gradient(f)), lap) <= 1e-11 * std::max(1.0, lap.max_abs()));
    }
}

TEST_CASE("laplacian: analytic oracle and eigenvalues of every retained mode") {
  Grid g1 = Grid::line(32, 2.5);
  const double L = g1.extent(0);
  CHECK(laplacian(ScalarField::constant(g1, 3.0)).max_abs() <= 1e-12);
  ScalarField f = ScalarField::sample(g1, Parity::neumann(), [&](double x, double) { return std::cos(kPi * x / L); });
  CHECK(max_abs_diff(laplacian(f), -(kPi / L) * (kPi / L) * f) <= 1e-12);

  for (const Grid& g : {Grid::line(16, 2.0), Grid::box(16, 8, 2 * kPi, 1.5)})
    for (Parity p : parities(g.dim())) {
      const int ky_max = g.dim() == 2 ? g.intervals(1) - 1 : 0;
      for (int kx = 0; kx < g.intervals(0); ++kx)
        for (int ky = 0; ky <= ky_max; ++ky) {
          if (mode_norm2(g, p, kx, ky) == 0.0) continue;
          std::vector<double> c(g.size(), 0.0);
          c[g.index(kx, ky)] = 1.0;
          ScalarField mode = from_spectral(g, p, c);
          const double wx = g.wavenumber(0, kx);
          const double wy = g.dim() == 2 ? g.wavenumber(1, ky) : 0.0;
          const double lambda = -(wx * wx + wy * wy);
          ScalarField lm = laplacian(mode);
          const double err = max_abs_diff(lm, lambda * mode);
          CHECK(err <= 1e-12 * std::max(1.0, std::abs(lambda)) * mode.max_abs());
        }
    }
}

TEST_CASE("integrate: analytic integrals") {
  Grid g = Grid::box(16, 16, 2.0, 3.0);
  CHECK(std::abs(integrate(ScalarField::constant(g, 1.0)) - 6.0) <= 1e-12);
  Grid g1 = Grid::line(16, 2.0);
  ScalarField c = ScalarField::sample(g1, Parity::neumann(), [](double x, double) { return std::cos(kPi * x / 2.0); });
  CHECK(std::abs(integrate(c)) <= 1e-12);
  CHECK(std::abs(integrate(c * c) - 1.0) <= 1e-12);
}

TEST_CASE("inverse Neumann Laplacian") {
  Grid g = Grid::box(16, 16, 2 * kPi, 3.0);
  CHECK(inverse_laplacian_neumann(ScalarField(g, Parity::neumann())).max_abs() == 0.0);

  const double L = g.extent(0);
  ScalarField f = ScalarField::sample(g, Parity::neumann(), [&](double x, double) { return std::cos(kPi * x / L); });
  ScalarField phi = inverse_laplacian_neumann(f);
  CHECK(max_abs_diff(phi, -(L / kPi) * (L / kPi) * f) <= 1e-12);

  std::mt19937_64 rng(23);
  for (const Grid& gg : sample_grids()) {
    // Zero mean and no Nyquist content: the range of the Neumann Laplacian.
    ScalarField h = testing::random_band_limited(gg, Parity::neumann(), gg.intervals(0) - 1, rng);
    std::vector<double> c = to_spectral(h);
    c[0] = 0.0;
    for (int i = 0; i < gg.points(0); ++i)
      for (int j = 0; j < gg.points(1); ++j)
        if (i == gg.intervals(0) || (gg.dim() == 2 && j == gg.intervals(1))) c[gg.index(i, j)] = 0.0;
    h = from_spectral(gg, Parity::neumann(), c);
    ScalarField back = laplacian(inverse_laplacian_neumann(h));
    CHECK(max_abs_diff(back, h) <= 1e-11 * h.max_abs());
    CHECK(std::abs(integrate(inverse_laplacian_neumann(h))) <= 1e-12 * gg.measure());
  }

  CHECK_THROWS_AS(inverse_laplacian_neumann(ScalarField::constant(g, 1.0)), nlc::Error);
}

TEST_CASE("helmholtz solve inverts c - kappa * laplacian") {
  std::mt19937_64 rng(29);
  Grid g = Grid::box(32, 16, 2 * kPi, 2.0);
  ScalarField f = testing::random_nodal(g, Parity::neumann(), rng);
  ScalarField phi = helmholtz_solve(f, 2.5, 0.3);
  ScalarField back = 2.5 * phi - 0.3 * laplacian(phi);
  CHECK(max_abs_diff(back, f) <= 1e-12 * f.max_abs() * 10);
}

TEST_CASE("operators are linear") {
  std::mt19937_64 rng(31);
  Grid g = Grid::box(16, 16, 2 * kPi, 2 * kPi);
  ScalarField f = testing::random_nodal(g, Parity::neumann(), rng);
  ScalarField h = testing::random_nodal(g, Parity::neumann(), rng);
  const double a = 1.7, b = -0.4;
  ScalarField comb = a * f + b * h;
  CHECK(max_abs_diff(laplacian(comb), a * laplacian(f) + b * laplacian(h)) <= 1e-11);
  CHECK(max_abs_diff(derivative(comb, 1), a * derivative(f, 1) + b * derivative(h, 1)) <= 1e-12);
  CHECK(max_abs_diff(dealias(comb), a * dealias(f) + b * dealias(h)) <= 1e-13);
}

TEST_CASE("dealias keeps low modes and removes the top third") {
  Grid g = Grid::line(32, 2 * kPi);
  const int cut = g.dealias_cutoff(0);
  CHECK(cut == 20);
  std::vector<double> c(g.size(), 0.0);
  c[3] = 1.0;
  c[cut] = 0.5;
  c[cut + 1] = 2.0;
  c[g.intervals(0)] = 1.0;
  std::vector<double> out = to_spectral(dealias(from_spectral(g, Parity::neumann(), c)));
  CHECK(std::abs(out[3] - 1.0) <= 1e-13);
  CHECK(std::abs(out[cut] - 0.5) <= 1e-13);
  CHECK(std::abs(out[cut + 1]) <= 1e-13);
  CHECK(std::abs(out[g.intervals(0)]) <= 1e-13);
}

TEST_CASE("products track parity") {
  Grid g = Grid::box(8, 8, 1.0, 1.0);
  ScalarField a(g, Parity::velocity(0)), b(g, Parity::velocity(1));
  CHECK((a * a).parity() == Parity::neumann());
  CHECK((a * b).parity() == Parity::dirichlet(2));
  CHECK_THROWS_AS(a + b, nlc::Error);
}

TEST_CASE("snapshot blocks round-trip at full precision and reject corruption") {
  std::mt19937_64 rng(41);
  Grid g = Grid::box(8, 16, 2.0, 1.0);
  ScalarField f = testing::random_nodal(g, Parity::velocity(1), rng);
  std::stringstream ss;
  write_field(ss, "u_y", f);
  NamedField back = read_field(ss, g);
  CHECK(back.name == "u_y");
  CHECK(back.field.parity() == f.parity());
  CHECK(back.field.values() == f.values());

  std::string text;
  {
    std::stringstream s2;
    write_field(s2, "rho", f);
    text = s2.str();
  }
  std::stringstream truncated(text.substr(0, text.size() / 2));
  CHECK_THROWS_AS(read_field(truncated, g), nlc::Error);
  std::stringstream wrong_grid(text);
  CHECK_THROWS_AS(read_field(wrong_grid, Grid::box(16, 16, 2.0, 1.0)), nlc::Error);
}
