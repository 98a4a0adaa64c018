#pragma once

#include "nlc/constitutive/params.hpp"
#include "nlc/solver/state.hpp"

namespace nlc::diagnostics {

struct EnergyParts {
  double kinetic = 0;     // int rho |u|^2 / 2
  double elastic = 0;     // int rho^gamma / (gamma - 1)
  double artificial = 0;  // int delta rho^beta / (beta - 1)
  double frank = 0;       // nu int |grad d|^2 / 2
  double penalty = 0;     // nu int F(d)
  double thermal = 0;     // int (rho + delta) theta
  double total() const { return kinetic + elastic + artificial + frank + penalty + thermal; }
};

EnergyParts energy_parts(const solver::State& s, const constitutive::RegParams& reg, const constitutive::PhysParams& p);
double total_energy(const solver::State& s, const constitutive::RegParams& reg, const constitutive::PhysParams& p);

struct DissipationParts {
  double viscous = 0;   // int S(u) : grad u
  double director = 0;  // nu kappa_relax int |lap d - f(d)|^2
  double sink = 0;      // delta int theta^{alpha+1}
  double eps_density = 0;  // eps int (gamma rho^{gamma-2} + delta beta rho^{beta-2}) |grad rho|^2

  // Part of the dissipation that leaves the total energy: viscous and
  // director heating return to the thermal energy except for the delta share.
  double budget(double delta) const { return delta * viscous + sink + eps_density; }
};

DissipationParts dissipation_parts(const solver::State& s, const constitutive::RegParams& reg,
                                   const constitutive::PhysParams& p);

// r = (E(next) - E(prev)) / dt + D(next); the scheme keeps r <= 0 up to round-off.
double energy_budget_residual(const solver::State& prev, const solver::State& next,
                              const constitutive::RegParams& reg, const constitutive::PhysParams& p, double dt);

struct EntropyProduction {
  double total = 0;
  double pointwise_min = 0;
};

// kappa(theta)|grad theta|^2/theta^2 + S:grad u/theta + nu kappa_relax |lap d - f|^2/theta.
EntropyProduction entropy_production(const solver::State& s, const constitutive::PhysParams& p);
// int rho (log theta - log rho), with vacuum contributing zero.
double entropy_total(const solver::State& s);

// Smallest C with |z log z| <= C (1 + z^gamma) for all z > 0.
double entropy_dominance_constant(double gamma);
// max over nodes of |rho log rho| - C (1 + rho^gamma); nonpositive when dominated.
double entropy_dominance_margin(const solver::State& s, double gamma);

}  // namespace nlc::diagnostics
