#include "nlc/diagnostics/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nlc/constitutive/laws.hpp"
#include "nlc/constitutive/renormalization.hpp"
#include "nlc/fields/operators.hpp"

namespace nlc::diagnostics {

using constitutive::PhysParams;
using constitutive::RegParams;
using fields::Parity;
using fields::ScalarField;
using fields::VectorField;
using solver::State;

namespace {

constexpr double kLogFloor = 1e-300;

ScalarField apply(const ScalarField& f, auto fn) { return f.map(fn); }

double weighted(const ScalarField& f, const ScalarField& phi) { return fields::inner(f, phi); }

}  // namespace

const std::vector<Renorm>& all_renorms() {
  static const std::vector<Renorm> v = {Renorm::Identity, Renorm::T1, Renorm::T2, Renorm::T4, Renorm::ZLogZ};
  return v;
}

std::string renorm_id(Renorm b) {
  switch (b) {
    case Renorm::Identity: return "identity";
    case Renorm::T1: return "T1";
    case Renorm::T2: return "T2";
    case Renorm::T4: return "T4";
    case Renorm::ZLogZ: return "zlogz";
  }
  return "?";
}

double renorm_b(Renorm b, double z) {
  switch (b) {
    case Renorm::Identity: return z;
    case Renorm::T1: return constitutive::truncation_T(z, 1.0);
    case Renorm::T2: return constitutive::truncation_T(z, 2.0);
    case Renorm::T4: return constitutive::truncation_T(z, 4.0);
    case Renorm::ZLogZ: return z * std::log(std::max(z, kLogFloor));
  }
  return 0.0;
}

double renorm_b_prime(Renorm b, double z) {
  switch (b) {
    case Renorm::Identity: return 1.0;
    case Renorm::T1: return constitutive::truncation_T_prime(z, 1.0);
    case Renorm::T2: return constitutive::truncation_T_prime(z, 2.0);
    case Renorm::T4: return constitutive::truncation_T_prime(z, 4.0);
    case Renorm::ZLogZ: return std::log(std::max(z, kLogFloor)) + 1.0;
  }
  return 0.0;
}

TestBattery test_battery(const fields::Grid& g) {
  const double pi = std::numbers::pi;
  const bool two = g.dim() == 2;
  const double lx = g.extent(0), ly = two ? g.extent(1) : 1.0;
  const int ny = two ? 3 : 1;
  TestBattery tb;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < ny; ++b) {
      tb.scalar.push_back(ScalarField::sample(g, Parity::neumann(), [&](double x, double y) {
        return std::cos(a * pi * x / lx) * std::cos(b * pi * y / ly);
      }));
      tb.positive.push_back(ScalarField::sample(g, Parity::neumann(), [&](double x, double y) {
        return 0.25 * (1.0 + std::cos(a * pi * x / lx)) * (1.0 + std::cos(b * pi * y / ly));
      }));
    }
  for (int c = 0; c < g.dim(); ++c)
    for (int k = 1; k <= 3; ++k)
      for (int l = 0; l < ny; ++l) {
        VectorField v = VectorField::velocity_zero(g);
        v[c] = ScalarField::sample(g, Parity::velocity(c), [&](double x, double y) {
          const double sx = c == 0 ? std::sin(k * pi * x / lx) : std::cos(l * pi * x / lx);
          const double sy = !two ? 1.0 : (c == 0 ? std::cos(l * pi * y / ly) : std::sin(k * pi * y / ly));
          return sx * sy;
        });
        tb.velocity.push_back(std::move(v));
      }
  return tb;
}

std::vector<double> renorm_residuals(const State& prev, const State& next, Renorm b, double eps, double dt,
                                     const TestBattery& tb) {
  const ScalarField bn = apply(prev.rho, [&](double z) { return renorm_b(b, z); });
  const ScalarField b1 = apply(next.rho, [&](double z) { return renorm_b(b, z); });
  const ScalarField comp = apply(prev.rho, [&](double z) { return renorm_b_prime(b, z) * z - renorm_b(b, z); });
  const ScalarField divu = fields::divergence(next.u);
  VectorField flux;
  for (const auto& uc : next.u.comp) flux.comp.push_back(bn * uc);
  ScalarField pointwise = (1.0 / dt) * (b1 - bn) + comp * divu;
  if (eps != 0.0) {
    const ScalarField bp = apply(next.rho, [&](double z) { return renorm_b_prime(b, z); });
    pointwise.axpy(-eps, bp * fields::laplacian(next.rho));
  }
  std::vector<double> out;
  for (const auto& phi : tb.scalar) out.push_back(weighted(pointwise, phi) - fields::inner(flux, fields::gradient(phi)));
  return out;
}

std::vector<double> momentum_residuals(const State& prev, const State& next, const RegParams& reg,
                                       const PhysParams& p, double dt, const TestBattery& tb) {
  const int dim = next.grid().dim();
  const auto grad_u = constitutive::velocity_gradient(next.u);
  const auto S = constitutive::viscous_stress(next.u, p);
  const auto E = constitutive::ericksen_stress(next.d, p.sigma0);
  const ScalarField P = next.rho.map([&](double r) {
    return std::pow(r, p.gamma) + (reg.delta != 0.0 ? reg.delta * std::pow(r, reg.beta) : 0.0);
  }) + p.R * (next.rho * next.theta);
  const auto grad_rho = fields::gradient(next.rho);

  VectorField accel;  // (rho' u' - rho u)/dt + eps grad u' grad rho'
  for (int c = 0; c < dim; ++c) {
    ScalarField a = (1.0 / dt) * (next.rho * next.u[c] - prev.rho * prev.u[c]);
    if (reg.eps != 0.0)
      for (int j = 0; j < dim; ++j) a.axpy(reg.eps, grad_u[c][j] * grad_rho[j]);
    accel.comp.push_back(std::move(a));
  }
  std::vector<double> out;
  for (const auto& eta : tb.velocity) {
    const auto ge = constitutive::velocity_gradient(eta);
    double r = fields::inner(accel, eta) - fields::inner(P, fields::divergence(eta));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        const ScalarField conv = next.rho * next.u[i] * next.u[j];
        r += fields::inner(S[i][j] - conv, ge[i][j]) - p.nu * fields::inner(E[i][j], ge[i][j]);
      }
    out.push_back(r);
  }
  return out;
}

std::vector<double> director_residuals(const State& prev, const State& next, const PhysParams& p, double dt,
                                       const TestBattery& tb) {
  const int dim = next.grid().dim();
  const VectorField f = constitutive::gl_force(next.d, p.sigma0);
  std::vector<double> out;
  for (std::size_t k = 0; k < 3; ++k) {
    ScalarField r = (1.0 / dt) * (next.d[k] - prev.d[k]);
    for (int c = 0; c < dim; ++c) r += next.u[c] * fields::derivative(next.d[k], c);
    r.axpy(p.kappa_relax, f[k] - fields::laplacian(next.d[k]));
    for (const auto& phi : tb.scalar) out.push_back(fields::inner(r, phi));
  }
  return out;
}

std::vector<double> thermal_defects(const State& prev, const State& next, const RegParams& reg, const PhysParams& p,
                                    double dt, const TestBattery& tb, bool dealias) {
  const double delta = reg.delta;
  const double s2 = p.sigma0 * p.sigma0;
  // Balance: d/dt (delta + rho) theta + transport - conduction + sink.
  ScalarField lhs = (1.0 / dt) * (add_constant(next.rho, delta) * next.theta - add_constant(prev.rho, delta) * prev.theta);
  VectorField flux;
  const ScalarField rt = prev.rho * prev.theta;
  for (const auto& uc : next.u.comp) flux.comp.push_back(dealias ? fields::dealias(rt * uc) : rt * uc);
  lhs += fields::divergence(flux);
  const ScalarField kap = constitutive::heat_conductivity(prev.theta, p);
  VectorField q = fields::gradient(next.theta);
  for (auto& qc : q.comp) qc = kap * qc;
  lhs -= fields::divergence(q);
  if (delta != 0.0) lhs += next.theta.map([&](double t) { return delta * std::pow(t, p.alpha + 1.0); });

  // Production: heating minus compression work.
  ScalarField rhs = (1.0 - delta) * constitutive::viscous_dissipation(next.u, p);
  rhs.axpy(-p.R, next.rho * next.theta * fields::divergence(next.u));
  const ScalarField n2 = fields::dot(next.d, next.d);
  ScalarField m2(next.grid(), Parity::neumann());
  for (std::size_t k = 0; k < 3; ++k) {
    const ScalarField mu = (1.0 / s2) * (n2 * next.d[k] - prev.d[k]) - fields::laplacian(next.d[k]);
    m2 += mu * mu;
  }
  rhs.axpy(p.nu * p.kappa_relax, m2);

  const ScalarField defect = rhs - lhs;
  std::vector<double> out;
  for (const auto& phi : tb.positive) out.push_back(fields::inner(defect, phi));
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_value(const std::vector<double>& v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  return m;
}

}  // namespace nlc::diagnostics
