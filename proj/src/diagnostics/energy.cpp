#include "nlc/diagnostics/energy.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/minima.hpp>

#include "nlc/constitutive/laws.hpp"
#include "nlc/error.hpp"
#include "nlc/fields/operators.hpp"

namespace nlc::diagnostics {

using constitutive::PhysParams;
using constitutive::RegParams;
using fields::ScalarField;
using solver::State;

namespace {

double integral_of(const ScalarField& base, auto f) { return fields::integrate(base.map(f)); }

double frank_energy(const fields::VectorField& d) {
  double e = 0;
  for (const auto& c : d.comp) {
    const auto g = fields::gradient(c);
    for (const auto& gc : g.comp) e += 0.5 * fields::inner(gc, gc);
  }
  return e;
}

}  // namespace

EnergyParts energy_parts(const State& s, const RegParams& reg, const PhysParams& p) {
  EnergyParts e;
  e.kinetic = 0.5 * fields::integrate(s.rho * fields::dot(s.u, s.u));
  e.elastic = integral_of(s.rho, [&](double r) { return constitutive::elastic_energy_density(r, p); });
  e.artificial = integral_of(s.rho, [&](double r) { return constitutive::artificial_energy_density(r, reg); });
  e.frank = p.nu * frank_energy(s.d);
  e.penalty = p.nu * fields::integrate(constitutive::gl_potential(s.d, p.sigma0));
  e.thermal = fields::integrate(add_constant(s.rho, reg.delta) * s.theta);
  return e;
}

double total_energy(const State& s, const RegParams& reg, const PhysParams& p) { return energy_parts(s, reg, p).total(); }

DissipationParts dissipation_parts(const State& s, const RegParams& reg, const PhysParams& p) {
  DissipationParts d;
  d.viscous = fields::integrate(constitutive::viscous_dissipation(s.u, p));
  fields::VectorField f = constitutive::gl_force(s.d, p.sigma0);
  double m2 = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const ScalarField mu = f[k] - fields::laplacian(s.d[k]);
    m2 += fields::inner(mu, mu);
  }
  d.director = p.nu * p.kappa_relax * m2;
  if (reg.delta != 0.0)
    d.sink = reg.delta * integral_of(s.theta, [&](double t) { return std::pow(t, p.alpha + 1.0); });
  if (reg.eps != 0.0) {
    const auto g = fields::gradient(s.rho);
    const ScalarField g2 = fields::dot(g, g);
    const ScalarField w = s.rho.map([&](double r) {
      if (r <= 0.0) return 0.0;
      double v = p.gamma * std::pow(r, p.gamma - 2.0);
      if (reg.delta != 0.0) v += reg.delta * reg.beta * std::pow(r, reg.beta - 2.0);
      return v;
    });
    d.eps_density = reg.eps * fields::integrate(w * g2);
  }
  return d;
}

double energy_budget_residual(const State& prev, const State& next, const RegParams& reg, const PhysParams& p,
                              double dt) {
  const double de = total_energy(next, reg, p) - total_energy(prev, reg, p);
  return de / dt + dissipation_parts(next, reg, p).budget(reg.delta);
}

EntropyProduction entropy_production(const State& s, const PhysParams& p) {
  if (!(s.theta.min() > 0.0))
    throw Error(ErrorKind::NonPositiveTemperature, "entropy production needs a positive temperature");
  const ScalarField kap = constitutive::heat_conductivity(s.theta, p);
  const auto gt = fields::gradient(s.theta);
  const ScalarField inv = s.theta.map([](double t) { return 1.0 / t; });
  ScalarField integrand = kap * fields::dot(gt, gt) * (inv * inv);
  integrand += constitutive::viscous_dissipation(s.u, p) * inv;
  const fields::VectorField f = constitutive::gl_force(s.d, p.sigma0);
  ScalarField m2(s.grid(), fields::Parity::neumann());
  for (std::size_t k = 0; k < 3; ++k) {
    const ScalarField mu = f[k] - fields::laplacian(s.d[k]);
    m2 += mu * mu;
  }
  integrand.axpy(p.nu * p.kappa_relax, m2 * inv);
  return {fields::integrate(integrand), integrand.min()};
}

double entropy_total(const State& s) {
  ScalarField e(s.grid(), fields::Parity::neumann());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double r = s.rho[i], t = s.theta[i];
    if (r == 0.0) continue;
    if (!(t > 0.0)) throw Error(ErrorKind::NonPositiveTemperature, "entropy needs a positive temperature");
    e[i] = r * constitutive::entropy(r, t);
  }
  return fields::integrate(e);
}

double entropy_dominance_constant(double gamma) {
  // Maximize |z log z| / (1 + z^gamma) in log z on both sides of z = 1.
  auto neg = [&](double lz) {
    const double z = std::exp(lz);
    return -std::abs(z * lz) / (1.0 + std::pow(z, gamma));
  };
  const auto lo = boost::math::tools::brent_find_minima(neg, -40.0, 0.0, 52);
  const auto hi = boost::math::tools::brent_find_minima(neg, 0.0, 40.0, 52);
  return -std::min(lo.second, hi.second) * (1.0 + 1e-9);
}

double entropy_dominance_margin(const State& s, double gamma) {
  const double c = entropy_dominance_constant(gamma);
  double m = -std::numeric_limits<double>::infinity();
  for (double r : s.rho.values()) {
    const double lhs = r > 0.0 ? std::abs(r * std::log(r)) : 0.0;
    m = std::max(m, lhs - c * (1.0 + std::pow(r, gamma)));
  }
  return m;
}

}  // namespace nlc::diagnostics
