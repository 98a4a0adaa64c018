#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nlc/constitutive/laws.hpp"
#include "nlc/constitutive/renormalization.hpp"
#include "nlc/error.hpp"
#include "nlc/fields/operators.hpp"
#include "support.hpp"

using namespace nlc::constitutive;
using nlc::fields::Grid;
using nlc::fields::Parity;
using nlc::fields::ScalarField;
using testing::kPi;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

nlc::ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const nlc::Error& e) {
    return e.kind();
  }
  FAIL("expected an nlc::Error");
  return nlc::ErrorKind::IoError;
}

}  // namespace

TEST_CASE("pressure") {
  PhysParams p;
  p.gamma = 2.0;
  p.R = 1.0;
  CHECK(pressure(1.0, 1.0, p) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(pressure(0.0, 5.0, p) == 0.0);
  p.gamma = 1.6;
  CHECK(std::abs(pressure(2.0, 0.5, p) - 4.031433133020796) <= 1e-14);
  CHECK(kind_of([&] { pressure(-1.0, 1.0, p); }) == nlc::ErrorKind::NegativeInput);

  // Monotone in density for fixed temperature.
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double rho = u(rng), theta = u(rng);
    CHECK(pressure(rho * 1.001, theta, p) > pressure(rho, theta, p));
  }
}

TEST_CASE("artificial pressure") {
  CHECK(artificial_pressure(3.0, 0.0, 5.0) == 0.0);
  CHECK(artificial_pressure(1.0, 0.1, 5.0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(std::abs(artificial_pressure(2.0, 0.01, 4.5) - 0.22627416997969521) <= 1e-15);
  CHECK(kind_of([] { artificial_pressure(-0.1, 0.1, 5.0); }) == nlc::ErrorKind::NegativeInput);
}

TEST_CASE("viscous stress") {
  PhysParams p;
  p.mu = 1.0;
  p.lambda = 0.0;
  CHECK(viscous_stress(Tensor::Zero(2, 2), p).norm() == 0.0);
  CHECK((viscous_stress(Tensor::Identity(2, 2), p) - 2.0 * Tensor::Identity(2, 2)).norm() == 0.0);
  p.lambda = 1.0;
  Tensor g(2, 2);
  g << 0, 1, 0, 0;
  Tensor expected(2, 2);
  expected << 0, 1, 1, 0;
  CHECK((viscous_stress(g, p) - expected).norm() == 0.0);
}

TEST_CASE("S : grad u is nonnegative on random tensors") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.01, 3.0);
  int checked = 0;
  for (int dim = 1; dim <= 3; ++dim)
    for (int i = 0; i < 4000; ++i) {
      PhysParams p;
      p.mu = pos(rng);
      // Includes the borderline lambda = -2 mu / 3.
      p.lambda = (i % 4 == 0) ? -2.0 * p.mu / 3.0 : -2.0 * p.mu / 3.0 + pos(rng);
      Tensor g(dim, dim);
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) g(a, b) = u(rng);
      const double scale = viscous_stress(g, p).norm() * g.norm();
      CHECK(viscous_dissipation(g, p) >= -1e-12 * scale);
      ++checked;
    }
  CHECK(checked >= 10000);
}

TEST_CASE("heat conductivity and its primitive") {
  PhysParams p;
  p.kappa_lo = 1.0;
  p.alpha = 2.0;
  CHECK(heat_conductivity(0.0, p) == 1.0);
  CHECK(heat_conductivity(1.0, p) == 2.0);
  PhysParams q = p;
  q.alpha = 3.0;
  q.kappa_lo = 0.5;
  CHECK(heat_conductivity(2.0, q) == doctest::Approx(4.5).epsilon(1e-15));
  CHECK(kind_of([&] { heat_conductivity(-1.0, p); }) == nlc::ErrorKind::NegativeInput);

  CHECK(kappa_primitive(0.0, p) == 0.0);
  CHECK(kappa_primitive(1.0, p) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  for (double theta : {0.3, 1.0, 2.7, 8.0}) {
    const double h = 1e-5 * theta;
    const double fd = (kappa_primitive(theta + h, q) - kappa_primitive(theta - h, q)) / (2 * h);
    CHECK(std::abs(fd - heat_conductivity(theta, q)) <= 1e-6 * heat_conductivity(theta, q));
  }

  // Two-sided growth bounds hold for the lower-envelope representative.
  PhysParams r = p;
  r.kappa_hi = 3.0;
  for (double theta = 0.0; theta < 10.0; theta += 0.37) {
    const double kap = heat_conductivity(theta, r);
    CHECK(kap >= r.kappa_lo * (1 + std::pow(theta, r.alpha)));
    CHECK(kap <= r.kappa_hi * (1 + std::pow(theta, r.alpha)));
  }
}

TEST_CASE("heat flux") {
  Grid g = Grid::line(32, 2.0);
  const double L = g.extent(0);
  PhysParams p;
  p.kappa_lo = 0.7;
  p.alpha = 2.0;

  HeatFlux flat = heat_flux(ScalarField::constant(g, 1.3), p);
  CHECK(flat.q[0].max_abs() <= 1e-12);

  ScalarField theta = ScalarField::sample(g, Parity::neumann(), [&](double x, double) { return 1.0 + std::cos(kPi * x / L); });
  HeatFlux hf = heat_flux(theta, p);
  double err = 0.0;
  for (int i = 0; i < g.points(0); ++i) {
    const double x = g.node(0, i);
    const double t = 1.0 + std::cos(kPi * x / L);
    const double expected = -p.kappa_lo * (1 + t * t) * (-(kPi / L) * std::sin(kPi * x / L));
    err = std::max(err, std::abs(hf.q[0][i] - expected));
  }
  CHECK(err <= 1e-10);

  PhysParams zero = p;
  zero.kappa_lo = 0.0;
  HeatFlux degenerate = heat_flux(theta, zero);
  CHECK(degenerate.degenerate);
  CHECK(degenerate.q[0].max_abs() == 0.0);
}

TEST_CASE("Ginzburg-Landau potential and force") {
  CHECK(gl_potential(Vec3(0.6, 0.8, 0.0), 0.5) <= 1e-30);
  CHECK(gl_force(Vec3(0.6, 0.8, 0.0), 0.5).norm() <= 1e-15);
  CHECK(gl_potential(Vec3::Zero(), 1.0) == 0.25);
  CHECK(gl_force(Vec3::Zero(), 1.0).norm() == 0.0);
  // Gradient of (|d|^2 - 1)^2 / 4 at (2, 0, 0).
  CHECK((gl_force(Vec3(2, 0, 0), 1.0) - Vec3(6, 0, 0)).norm() <= 1e-15);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0), s(0.3, 2.0);
  for (int i = 0; i < 2000; ++i) {
    Vec3 d(u(rng), u(rng), u(rng));
    d *= 3.0 * std::abs(u(rng)) / std::max(1.0, d.norm());
    const double sigma = s(rng);
    const Vec3 f = gl_force(d, sigma);
    for (int k = 0; k < 3; ++k) {
      const double h = 1e-5;
      Vec3 e = Vec3::Zero();
      e[k] = h;
      const double fd = (gl_potential(d + e, sigma) - gl_potential(d - e, sigma)) / (2 * h);
      CHECK(std::abs(fd - f[k]) <= 1e-6 * std::max(1.0, f.norm()));
    }
    if (d.norm() >= 1.0) CHECK(d.dot(f) >= 0.0);
  }
}

TEST_CASE("Ericksen stress") {
  DirectorGradient zero = DirectorGradient::Zero(3, 2);
  CHECK((ericksen_stress(zero, 0.3) + 0.3 * Tensor::Identity(2, 2)).norm() <= 1e-15);

  // d = (cos x, sin x, 0) in 1D at x = 0.4.
  DirectorGradient g1(3, 1);
  g1 << -std::sin(0.4), std::cos(0.4), 0.0;
  CHECK(std::abs(ericksen_stress(g1, 0.0)(0, 0) - 0.5) <= 1e-15);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int dim = 1; dim <= 3; ++dim)
    for (int i = 0; i < 200; ++i) {
      DirectorGradient g(3, dim);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < dim; ++b) g(a, b) = u(rng);
      const double F = std::abs(u(rng));
      const Tensor e = ericksen_stress(g, F);
      const double odot_trace = e.trace() + dim * (0.5 * g.squaredNorm() + F);
      CHECK(std::abs(odot_trace - g.squaredNorm()) <= 1e-12 * std::max(1.0, g.squaredNorm()));
      CHECK((e - e.transpose()).norm() == 0.0);
    }
}

TEST_CASE("entropy") {
  const double e = std::numbers::e;
  CHECK(entropy(1.0, 1.0) == 0.0);
  CHECK(entropy(e, 1.0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(entropy(1.0, e) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(kind_of([] { entropy(0.0, 1.0); }) == nlc::ErrorKind::NonPositiveInput);
  CHECK(kind_of([] { entropy(1.0, -2.0); }) == nlc::ErrorKind::NonPositiveInput);
}

TEST_CASE("renormalization kernels") {
  PhysParams p;
  p.alpha = 2.0;
  p.kappa_lo = 1.0;
  CHECK(renorm_kernels(0.0, 1.0, p).H == 0.0);
  CHECK(renorm_kernels(std::numbers::e - 1.0, 1.0, p).H == doctest::Approx(1.0).epsilon(1e-15));

  for (double omega : {1.0, 0.5, 3.0}) {
    PhysParams q = p;
    for (double alpha : {2.0, 2.5}) {
      q.alpha = alpha;
      for (double theta = 0.0; theta <= 10.0; theta += 0.5) {
        const RenormKernels k = renorm_kernels(theta, omega, q);
        auto kh = [&](double z) { return q.kappa_lo * (1 + std::pow(z, q.alpha)) * omega / (omega + z); };
        auto h = [&](double z) { return omega / (omega + z); };
        const double oracle_kh = simpson(kh, 0.0, theta, 20000);
        const double oracle_h = simpson(h, 0.0, theta, 20000);
        CHECK(std::abs(k.K_h - oracle_kh) <= 1e-8 * std::max(1.0, oracle_kh));
        CHECK(std::abs(k.H - oracle_h) <= 1e-10);
        CHECK(k.h == doctest::Approx(omega / (omega + theta)).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("truncations T_k and L_k") {
  for (double k : {1.0, 2.0, 4.0, 8.0}) {
    for (double z = 0.0; z <= k; z += k / 16) CHECK(truncation_T(z, k) == z);
    for (double z = 3 * k; z <= 6 * k; z += k / 4) CHECK(truncation_T(z, k) == 2 * k);

    // Branch continuity of L_k at z = k.
    const double below = truncation_L(k * (1 - 1e-15), k);
    const double at = truncation_L(k, k);
    CHECK(std::abs(at - k * std::log(k)) <= 1e-12 * std::max(1.0, k));
    CHECK(std::abs(below - at) <= 1e-12 * std::max(1.0, k));

    double prev = 0.0;
    for (double z = 0.01; z < 5 * k; z += 0.013 * k) {
      const double t = truncation_T(z, k);
      CHECK(t >= prev);
      CHECK(t >= 0.0);
      CHECK(t <= std::min(z, 2 * k) + 1e-15);
      prev = t;

      // z L_k'(z) - L_k(z) = T_k(z) by central differences.
      const double h = 1e-5 * z;
      if (std::abs(z - k) > 2 * h) {
        const double dl = (truncation_L(z + h, k) - truncation_L(z - h, k)) / (2 * h);
        const double id = z * dl - truncation_L(z, k);
        CHECK(std::abs(id - t) <= 1e-8 * std::max(t, 1.0));
      }
      // T_k' and T_k'' against differences of T_k away from the joints.
      if (std::abs(z - k) > 2 * h && std::abs(z - 3 * k) > 2 * h) {
        const double dt = (truncation_T(z + h, k) - truncation_T(z - h, k)) / (2 * h);
        CHECK(std::abs(dt - truncation_T_prime(z, k)) <= 1e-8);
        const double d2 = (truncation_T_prime(z + h, k) - truncation_T_prime(z - h, k)) / (2 * h);
        CHECK(std::abs(d2 - truncation_T_second(z, k)) <= 1e-8);
      }
    }
    // Convexity of L_k below k.
    for (double z = 0.02 * k; z < 0.98 * k; z += 0.01 * k) {
      const double h = 0.01 * k;
      CHECK(truncation_L(z + h, k) - 2 * truncation_L(z, k) + truncation_L(z - h, k) >= 0.0);
    }
  }
  // The middle arc is concave: slope decreases from 1 to 0.
  CHECK(truncation_T_prime(1.0 + 1e-9, 1.0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(truncation_T_prime(3.0 - 1e-9, 1.0) == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(truncation_T_second(2.0, 1.0) < 0.0);
}

TEST_CASE("parameter validation") {
  PhysParams p;
  CHECK_NOTHROW(p.validate());
  p.gamma = 1.2;
  CHECK(kind_of([&] { p.validate(); }) == nlc::ErrorKind::ValidationError);
  p = PhysParams{};
  p.lambda = -p.mu;
  CHECK(kind_of([&] { p.validate(); }) == nlc::ErrorKind::ValidationError);
  p = PhysParams{};
  p.alpha = 1.5;
  CHECK(kind_of([&] { p.validate(); }) == nlc::ErrorKind::ValidationError);

  PhysParams q;
  q.gamma = 2.0;
  RegParams r;
  r.beta = 3.0;
  try {
    r.validate(q);
    FAIL("expected ValidationError");
  } catch (const nlc::Error& e) {
    CHECK(std::string(e.what()).find("β must exceed max{4,γ}") != std::string::npos);
  }
  q.gamma = 5.0;
  r.beta = 4.5;
  CHECK(kind_of([&] { r.validate(q); }) == nlc::ErrorKind::ValidationError);
  r.beta = 5.5;
  CHECK_NOTHROW(r.validate(q));
}
