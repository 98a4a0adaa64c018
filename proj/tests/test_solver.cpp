#include <doctest.h>

#include <sstream>

#include <Eigen/Eigenvalues>

#include "nlc/constitutive/laws.hpp"
#include "nlc/error.hpp"
#include "nlc/fields/operators.hpp"
#include "nlc/solver/coupled.hpp"
#include "nlc/solver/initial_data.hpp"
#include "support.hpp"

using namespace nlc;
using namespace nlc::solver;
using testing::kPi;
using testing::max_abs_diff;

namespace {

double vdiff(const fields::VectorField& a, const fields::VectorField& b) {
  double m = 0;
  for (std::size_t c = 0; c < a.size(); ++c) m = std::max(m, max_abs_diff(a[c], b[c]));
  return m;
}

fields::VectorField basis_function(const GalerkinBasis& b, int i) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(b.size());
  e[i] = 1.0;
  return b.synthesize(e);
}

fields::ScalarField unit(const fields::ScalarField& f) { return (1.0 / f.max_abs()) * f; }

State equilibrium_state(const fields::Grid& g, const GalerkinBasis& b) {
  return regularize_initial_data(preset("equilibrium", g), {}, b);
}

}  // namespace

TEST_CASE("Galerkin basis is orthonormal and its projection idempotent") {
  const auto g = fields::Grid::box(16, 16, 2.0, 3.0);
  const GalerkinBasis b(g, 5);
  CHECK(b.size() == 2 * 5 * 6);
  for (int i = 0; i < b.size(); i += 7)
    for (int j = 0; j < b.size(); j += 5) {
      const double ip = fields::inner(basis_function(b, i), basis_function(b, j));
      CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
    }
  std::mt19937_64 rng(3);
  fields::VectorField u;
  u.kind = fields::VectorKind::Velocity;
  for (int c = 0; c < 2; ++c) u.comp.push_back(testing::random_nodal(g, fields::Parity::velocity(c), rng));
  const auto p1 = b.apply(u);
  CHECK(vdiff(b.apply(p1), p1) < 1e-13);
  // Orthogonality of the residual to X_n.
  CHECK(b.project(u - p1).cwiseAbs().maxCoeff() < 1e-13);
  CHECK_THROWS_AS(GalerkinBasis(g, g.dealias_cutoff(0) + 1), Error);
}

TEST_CASE("mass matrix matches quadrature and is bounded below by min rho") {
  const auto g = fields::Grid::box(16, 16, 1.0, 2.0);
  const GalerkinBasis b(g, 4);
  std::mt19937_64 rng(11);
  fields::ScalarField rho = add_constant(0.2 * testing::random_band_limited(g, fields::Parity::neumann(), 15, rng), 0.6);
  const Eigen::MatrixXd M = b.mass_matrix(rho);
  double err = 0;
  for (int i = 0; i < b.size(); ++i) {
    const auto ei = basis_function(b, i);
    fields::VectorField re = ei;
    for (auto& c : re.comp) c = rho * c;
    for (int j = 0; j < b.size(); ++j) err = std::max(err, std::abs(M(i, j) - fields::inner(re, basis_function(b, j))));
  }
  CHECK(err < 1e-13);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  CHECK(es.eigenvalues().minCoeff() >= rho.min() - 1e-13);
  CHECK(es.eigenvalues().maxCoeff() <= rho.max() + 1e-13);

  const auto g1 = fields::Grid::line(32, 1.5);
  const GalerkinBasis b1(g1, 10);
  fields::ScalarField r1 = add_constant(0.3 * testing::random_band_limited(g1, fields::Parity::neumann(), 31, rng), 1.0);
  const Eigen::MatrixXd M1 = b1.mass_matrix(r1);
  err = 0;
  for (int i = 0; i < b1.size(); ++i)
    for (int j = 0; j < b1.size(); ++j) {
      fields::VectorField re = basis_function(b1, i);
      re[0] = r1 * re[0];
      err = std::max(err, std::abs(M1(i, j) - fields::inner(re, basis_function(b1, j))));
    }
  CHECK(err < 1e-13);
}

TEST_CASE("viscous matrix matches the quadrature of S(eta_j) : grad eta_i") {
  const auto g = fields::Grid::box(16, 16, 1.0, 1.7);
  const GalerkinBasis b(g, 4);
  constitutive::PhysParams p;
  p.mu = 1.3;
  p.lambda = 0.4;
  const Eigen::MatrixXd A = b.viscous_matrix(p);
  double err = 0;
  for (int j = 0; j < b.size(); ++j) {
    const auto S = constitutive::viscous_stress(basis_function(b, j), p);
    for (int i = 0; i < b.size(); ++i) {
      const auto G = constitutive::velocity_gradient(basis_function(b, i));
      double q = 0;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) q += fields::inner(S[r][c], G[r][c]);
      err = std::max(err, std::abs(A(i, j) - q));
    }
  }
  CHECK(err < 1e-11);
  CHECK((A - A.transpose()).cwiseAbs().maxCoeff() < 1e-14 * A.cwiseAbs().maxCoeff());
}

TEST_CASE("density step: diffusion decay factor and mass conservation") {
  const double L = 2.0, eps = 0.05, dt = 0.01;
  const auto g = fields::Grid::line(32, L);
  const auto rho = fields::ScalarField::sample(g, fields::Parity::neumann(),
                                               [&](double x, double) { return 1.0 + 0.1 * std::cos(kPi * x / L); });
  const auto r1 = step_density(rho, fields::VectorField::velocity_zero(g), eps, dt);
  const double amp = 0.1 / (1.0 + eps * dt * (kPi / L) * (kPi / L));
  const auto expect = fields::ScalarField::sample(
      g, fields::Parity::neumann(), [&](double x, double) { return 1.0 + amp * std::cos(kPi * x / L); });
  CHECK(max_abs_diff(r1, expect) < 1e-14);

  const auto g2 = fields::Grid::box(32, 32, 1.0, 1.0);
  std::mt19937_64 rng(5);
  const auto r2 = add_constant(0.2 * unit(testing::random_band_limited(g2, fields::Parity::neumann(), 8, rng)), 1.0);
  fields::VectorField u;
  u.kind = fields::VectorKind::Velocity;
  for (int c = 0; c < 2; ++c) u.comp.push_back(0.3 * testing::random_band_limited(g2, fields::Parity::velocity(c), 6, rng));
  const auto r3 = step_density(r2, u, 0.01, 0.01);
  CHECK(fields::integrate(r3) == doctest::Approx(fields::integrate(r2)).epsilon(1e-14));
}

TEST_CASE("director step reproduces the discrete convex-split ODE and converges to the relaxation ODE") {
  const auto g = fields::Grid::line(16, 1.0);
  constitutive::PhysParams p;
  p.sigma0 = 0.7;
  p.kappa_relax = 1.3;
  const double s2 = p.sigma0 * p.sigma0;
  const auto u = fields::VectorField::velocity_zero(g);

  const double eta0 = 0.4, dt = 0.02;
  const auto d1 = step_director(fields::VectorField::director_constant(g, {eta0, 0, 0}), u, dt, p);
  const double e1 = d1[0][0];
  CHECK(std::abs(e1 * (1 + p.kappa_relax * dt * e1 * e1 / s2) - eta0 * (1 + p.kappa_relax * dt / s2)) < 1e-13);
  CHECK(max_abs_diff(d1[0], fields::ScalarField::constant(g, e1)) < 1e-14);
  CHECK(d1[1].max_abs() == 0.0);

  // d eta/dt = -kappa (eta^2 - 1) eta / sigma^2
  const double T = 0.4;
  auto exact = [&](double t) {
    return 1.0 / std::sqrt(1.0 + (1.0 / (eta0 * eta0) - 1.0) * std::exp(-2.0 * p.kappa_relax * t / s2));
  };
  double errs[2];
  for (int r = 0; r < 2; ++r) {
    const int steps = 40 << r;
    auto d = fields::VectorField::director_constant(g, {eta0, 0, 0});
    for (int k = 0; k < steps; ++k) d = step_director(d, u, T / steps, p);
    errs[r] = std::abs(d[0][0] - exact(T));
  }
  CHECK(errs[1] < 5e-3);
  CHECK(errs[0] / errs[1] == doctest::Approx(2.0).epsilon(0.1));

  // Near the unstable state d = 0 with sigma0 = 1: growth along -(eta^2 - 1) eta.
  constitutive::PhysParams q;
  const double a0 = 1e-3;
  auto d = fields::VectorField::director_constant(g, {a0, 0, 0});
  for (int k = 0; k < 1000; ++k) d = step_director(d, u, 1e-4, q);
  const double grow = 1.0 / std::sqrt(1.0 + (1.0 / (a0 * a0) - 1.0) * std::exp(-0.2));
  CHECK(std::abs(d[0][0] - grow) < 1e-6);
  CHECK(step_director(fields::VectorField::director_constant(g, {0, 0, 0}), u, 0.1, q)[0].max_abs() == 0.0);
}

TEST_CASE("temperature step: uniform sink ODE and energy budget without sink") {
  const auto g = fields::Grid::line(16, 1.0);
  constitutive::RegParams reg;
  reg.delta = 0.5;
  constitutive::PhysParams p;
  const auto rho = fields::ScalarField::constant(g, 1.0);
  const auto u = fields::VectorField::velocity_zero(g);
  const auto d = fields::VectorField::director_constant(g, {1, 0, 0});
  auto theta = fields::ScalarField::constant(g, 1.0);
  const double dt = 1e-4, T = 0.1;
  {
    // One step against the exact flow of (1 + delta) theta' = -delta theta^3 (delta = 0.1).
    constitutive::RegParams r1;
    r1.delta = 0.1;
    const double one = step_temperature(theta, rho, u, d, r1, p, dt)[0];
    CHECK(std::abs(one - 1.0 / std::sqrt(1.0 + 2.0 * r1.delta * dt / (1.0 + r1.delta))) < 1e-8);
  }
  for (int k = 0; k < 1000; ++k) theta = step_temperature(theta, rho, u, d, reg, p, dt);
  // (1 + delta) theta' = -delta theta^3
  const double exact = 1.0 / std::sqrt(1.0 + 2.0 * reg.delta * T / (1.0 + reg.delta));
  CHECK(std::abs(theta[3] - exact) < 2e-6);
  CHECK(theta.max() - theta.min() < 1e-14);

  const auto g2 = fields::Grid::box(16, 16, 1.0, 1.0);
  constitutive::RegParams r0;
  p.kappa_hi = 3.0;
  std::mt19937_64 rng(9);
  auto th = add_constant(0.3 * unit(testing::random_band_limited(g2, fields::Parity::neumann(), 5, rng)), 1.0);
  const auto rho2 = add_constant(0.2 * unit(testing::random_band_limited(g2, fields::Parity::neumann(), 5, rng)), 1.0);
  const auto th1 = step_temperature(th, rho2, fields::VectorField::velocity_zero(g2),
                                    fields::VectorField::director_constant(g2, {1, 0, 0}), r0, p, 0.01);
  CHECK(fields::integrate(rho2 * th1) == doctest::Approx(fields::integrate(rho2 * th)).epsilon(1e-12));
  CHECK(th1.max() < th.max());
  CHECK(th1.min() > th.min());

  // Budget with frozen density and velocity, heating and sinks at the new level.
  constitutive::RegParams rd;
  rd.delta = 0.2;
  fields::VectorField v;
  v.kind = fields::VectorKind::Velocity;
  for (int c = 0; c < 2; ++c) v.comp.push_back(0.3 * unit(testing::random_band_limited(g2, fields::Parity::velocity(c), 4, rng)));
  fields::VectorField dd = fields::VectorField::director_constant(g2, {0.8, 0.3, 0.1});
  dd[0] = add_constant(0.1 * unit(testing::random_band_limited(g2, fields::Parity::neumann(), 4, rng)), 0.8);
  const double h = 0.005;
  const auto th2 = step_temperature(th, rho2, v, dd, rd, p, h);
  const auto mu = director_potential(dd, p.sigma0);
  const double lhs = fields::integrate(add_constant(rho2, rd.delta) * (th2 - th));
  const auto divv = fields::divergence(v);
  double rhs = (1 - rd.delta) * fields::integrate(constitutive::viscous_dissipation(v, p)) +
               fields::integrate(fields::dot(mu, mu)) - p.R * fields::integrate(rho2 * th2 * divv) -
               rd.delta * fields::integrate(th2.map([&](double t) { return std::pow(t, p.alpha + 1); }));
  CHECK(lhs == doctest::Approx(h * rhs).epsilon(1e-10));
}

TEST_CASE("momentum step: 1D Stokes mode decay and vacuum detection") {
  const double L = 1.5, dt = 0.01;
  const auto g = fields::Grid::line(32, L);
  const GalerkinBasis b(g, 8);
  constitutive::PhysParams p;
  p.mu = 0.7;
  p.lambda = 0.3;
  const auto rho = fields::ScalarField::constant(g, 1.0);
  const auto theta = fields::ScalarField::constant(g, 1.0);
  const auto d = fields::VectorField::director_constant(g, {1, 0, 0});
  auto u = fields::VectorField::velocity_zero(g);
  u[0] = fields::ScalarField::sample(g, fields::Parity::velocity(0), [&](double x, double) { return 0.4 * std::sin(kPi * x / L); });
  MomentumTerms terms;
  terms.convection = false;
  const auto u1 = step_momentum(u, rho, theta, d, {}, b, dt, p, terms);
  const double factor = 1.0 / (1.0 + dt * (2 * p.mu + p.lambda) * (kPi / L) * (kPi / L));
  CHECK(max_abs_diff(u1[0], factor * u[0]) < 1e-14);

  const auto vac = fields::ScalarField::constant(g, 0.0);
  try {
    step_momentum(u, vac, theta, d, {}, b, dt, p, terms);
    FAIL("expected SingularMassMatrix");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularMassMatrix);
  }
}

TEST_CASE("coupled step: equilibrium is a fixed point, perturbed data converge quickly") {
  const auto g = fields::Grid::box(32, 32, 1.0, 1.0);
  const GalerkinBasis b(g, 8);
  Problem pb;
  pb.reg.eps = 0.01;
  const State eq = equilibrium_state(g, b);
  const StepResult r = step_coupled(eq, pb, b, 1e-3);
  CHECK(r.info.picard_iterations == 1);
  CHECK(max_abs_diff(r.next.rho, eq.rho) < 1e-14);
  CHECK(max_abs_diff(r.next.theta, eq.theta) < 1e-12);
  CHECK(vdiff(r.next.d, eq.d) < 1e-14);
  CHECK(fields::l2_norm(r.next.u) < 1e-14);

  pb.reg.delta = 1e-3;
  const State s0 = regularize_initial_data(preset("coupled", g), pb.reg, b);
  const StepResult r2 = step_coupled(s0, pb, b, 1e-3);
  CHECK(r2.info.picard_iterations <= 15);
  CHECK(fields::integrate(r2.next.rho) == doctest::Approx(fields::integrate(s0.rho)).epsilon(1e-13));
  r2.next.validate();
}

TEST_CASE("step size control: halving recovers, persistent loss underflows") {
  const double L = 1.0;
  const auto g = fields::Grid::line(32, L);
  const GalerkinBasis b(g, 8);
  Problem pb;
  InitialData raw = preset("equilibrium", g);
  raw.rho = fields::ScalarField::sample(g, fields::Parity::neumann(), [&](double x, double) { return 1.0 + 0.9 * std::cos(kPi * x / L); });
  raw.m[0] = raw.rho * fields::ScalarField::sample(g, fields::Parity::velocity(0), [&](double x, double) { return 2.0 * std::sin(kPi * x / L); });
  const State s = regularize_initial_data(raw, pb.reg, b);
  const StepResult r = step_coupled(s, pb, b, 0.5);
  CHECK(r.info.halvings >= 1);
  CHECK(r.info.dt < 0.5);
  r.next.validate();

  State bad = s;
  bad.rho = fields::ScalarField::sample(g, fields::Parity::neumann(), [&](double x, double) { return std::max(0.0, std::cos(kPi * x / L)); });
  bad.u[0] = fields::ScalarField::sample(g, fields::Parity::velocity(0), [&](double x, double) { return std::sin(kPi * x / L); });
  pb.cfg.dealias = false;
  try {
    step_coupled(bad, pb, b, 1e-3);
    FAIL("expected StepUnderflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StepUnderflow);
  }
}

TEST_CASE("run hits requested stop times and T_end exactly") {
  const auto g = fields::Grid::line(16, 1.0);
  Problem pb;
  pb.reg.n = 4;
  pb.cfg.dt = 0.003;
  pb.cfg.t_end = 0.02;
  const GalerkinBasis b(g, 4);
  const State s0 = regularize_initial_data(preset("density-bump", g), pb.reg, b);
  struct Rec : StepObserver {
    std::vector<double> t;
    void on_step(const State&, const State& n, const StepInfo&) override { t.push_back(n.t); }
  } rec;
  const RunResult res = run(s0, pb, &rec, {0.01});
  CHECK(res.final_state.t == 0.02);
  CHECK(std::find(rec.t.begin(), rec.t.end(), 0.01) != rec.t.end());
  CHECK(res.steps == static_cast<int>(rec.t.size()));
  pb.cfg.t_end = 0.0;
  CHECK(run(s0, pb).steps == 0);
}

TEST_CASE("state snapshots round-trip bit for bit") {
  const auto g = fields::Grid::box(16, 16, 1.0, 2.0);
  const GalerkinBasis b(g, 4);
  const State s = regularize_initial_data(preset("coupled", g), {}, b);
  std::ostringstream a;
  write_state(a, s);
  std::istringstream in(a.str());
  const State back = read_state(in);
  std::ostringstream c;
  write_state(c, back);
  CHECK(a.str() == c.str());
  CHECK(max_abs_diff(back.rho, s.rho) == 0.0);

  std::istringstream trunc(a.str().substr(0, a.str().size() / 2));
  CHECK_THROWS_AS(read_state(trunc), Error);
}

TEST_CASE("initial data regularization") {
  const auto g = fields::Grid::box(16, 16, 1.0, 1.0);
  const GalerkinBasis b(g, 4);
  auto expect_kind = [&](const InitialData& raw, ErrorKind k) {
    try {
      regularize_initial_data(raw, {}, b);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == k);
    }
  };
  InitialData raw = preset("equilibrium", g);
  raw.rho[5] = -0.1;
  expect_kind(raw, ErrorKind::InvalidInitialData);
  raw = preset("equilibrium", g);
  raw.theta[0] = 0.0;
  expect_kind(raw, ErrorKind::InvalidInitialData);
  raw = preset("coupled", g);
  raw.rho[g.index(3, 4)] = 0.0;
  expect_kind(raw, ErrorKind::InvalidInitialData);

  constitutive::RegParams reg;
  reg.delta = 0.5;
  InitialData big = preset("density-bump", g);
  const State s = regularize_initial_data(big, reg, b);
  CHECK(s.rho.min() >= 0.5);
  CHECK(s.rho.max() <= std::pow(0.5, -1.0 / (2 * reg.beta)) + 1e-15);

  // Recovered velocity satisfies M(rho) c = <m, eta>.
  const State c = regularize_initial_data(preset("coupled", g), {}, b);
  const InitialData cr = preset("coupled", g);
  const Eigen::VectorXd lhs = b.mass_matrix(c.rho) * b.project(c.u);
  CHECK((lhs - b.project(cr.m)).cwiseAbs().maxCoeff() < 1e-13);
  // Momentum is cut where the clipped density falls below the raw one.
  const State cut = regularize_initial_data(preset("coupled", g), reg, b);
  CHECK(cut.rho.max() <= std::pow(0.5, -0.1) + 1e-15);
  const State unshifted = regularize_initial_data(preset("density-bump", g), {}, b);
  CHECK(fields::l2_norm(unshifted.u) == 0.0);
  constitutive::RegParams small;
  small.delta = 0.01;
  CHECK(max_abs_diff(regularize_initial_data(preset("equilibrium", g), small, b).rho, fields::ScalarField::constant(g, 1.0)) == 0.0);
  InitialData warm = preset("equilibrium", g);
  warm.theta = fields::ScalarField::constant(g, 0.5);
  CHECK(regularize_initial_data(warm, {}, b, {0.1, 10.0}).theta.min() == 0.5);
  warm.theta = fields::ScalarField::constant(g, 20.0);
  CHECK(regularize_initial_data(warm, {}, b, {0.1, 10.0}).theta.max() == 10.0);
  for (const auto& name : preset_names()) CHECK_NOTHROW(regularize_initial_data(preset(name, g), {}, b).validate());
  CHECK_THROWS_AS(preset("nope", g), Error);
}
