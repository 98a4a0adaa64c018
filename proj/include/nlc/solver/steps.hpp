#pragma once

#include <functional>
#include <optional>

#include "nlc/constitutive/params.hpp"
#include "nlc/fields/field.hpp"
#include "nlc/solver/galerkin.hpp"

namespace nlc::solver {

// Optional body forces added to each equation (used for manufactured solutions).
struct Sources {
  std::optional<fields::ScalarField> rho;
  std::optional<fields::VectorField> m;
  std::optional<fields::ScalarField> theta;
  std::optional<fields::VectorField> d;
};
// Sources evaluated at the new time level.
using SourceFn = std::function<Sources(double t)>;

// ---- density ---------------------------------------------------------------

struct DensityUpdate {
  fields::ScalarField rho;
  fields::VectorField flux;  // filtered rho^n u used in the transport term
};

// (rho' - rho)/dt + div F = eps lap rho' + s, F = filter(rho u).
DensityUpdate density_update(const fields::ScalarField& rho, const fields::VectorField& u, double eps, double dt,
                             bool dealias = true, const fields::ScalarField* source = nullptr);
fields::ScalarField step_density(const fields::ScalarField& rho, const fields::VectorField& u, double eps, double dt);

// ---- director --------------------------------------------------------------

struct DirectorUpdate {
  fields::VectorField d;
  // -lap d' + f_h(d', d^n): the discrete chemical potential.
  fields::VectorField mu;
  int iterations = 0;
};

// (d' - d)/dt + filter(u . grad d) = kappa (lap d' - f_h) + s with the
// convex-concave split f_h = (|d'|^2 d' - d)/sigma0^2.
DirectorUpdate director_update(const fields::VectorField& d, const fields::VectorField& u, double dt,
                               const constitutive::PhysParams& p, bool dealias = true,
                               const fields::VectorField* source = nullptr);
fields::VectorField step_director(const fields::VectorField& d, const fields::VectorField& u, double dt,
                                  const constitutive::PhysParams& p);

// ---- temperature -----------------------------------------------------------

struct TemperatureInputs {
  const fields::ScalarField* theta = nullptr;    // theta^n
  const fields::ScalarField* rho_old = nullptr;  // rho^n
  const fields::ScalarField* rho_new = nullptr;  // rho'
  const fields::VectorField* u = nullptr;
  const fields::VectorField* mu = nullptr;  // director chemical potential
  const fields::ScalarField* source = nullptr;
};

// (delta + rho') theta' - (delta + rho) theta over dt plus transport, lagged
// conductivity, implicit sink delta theta'^{alpha+1} and implicit compression
// R rho' theta' div u, heated by (1 - delta) S(u):grad u + nu kappa_relax |mu|^2.
fields::ScalarField temperature_update(const TemperatureInputs& in, const constitutive::RegParams& reg,
                                       const constitutive::PhysParams& p, double dt, bool dealias = true);
// Frozen density and velocity; the heating uses mu = -lap d + f(d).
fields::ScalarField step_temperature(const fields::ScalarField& theta, const fields::ScalarField& rho,
                                     const fields::VectorField& u, const fields::VectorField& d,
                                     const constitutive::RegParams& reg, const constitutive::PhysParams& p,
                                     double dt);

// ---- momentum --------------------------------------------------------------

// Switches for the explicit momentum forces.
struct MomentumTerms {
  bool convection = true;
  bool pressure = true;
  bool ericksen = true;
  bool artificial_viscosity = true;
};

struct MomentumInputs {
  const fields::ScalarField* rho_old = nullptr;
  const fields::ScalarField* rho_new = nullptr;
  const fields::ScalarField* theta_new = nullptr;
  const fields::VectorField* u_old = nullptr;   // u^n
  const fields::VectorField* u_iter = nullptr;  // current Picard iterate
  const fields::VectorField* d_old = nullptr;
  const fields::VectorField* mu = nullptr;    // director chemical potential
  const fields::VectorField* flux = nullptr;  // density flux
  const fields::VectorField* source = nullptr;
};

fields::VectorField momentum_update(const MomentumInputs& in, const GalerkinBasis& basis,
                                    const constitutive::RegParams& reg, const constitutive::PhysParams& p,
                                    double dt, bool dealias = true, const MomentumTerms& terms = {});
// Frozen density, temperature and director; one linear Galerkin solve.
fields::VectorField step_momentum(const fields::VectorField& u, const fields::ScalarField& rho,
                                  const fields::ScalarField& theta, const fields::VectorField& d,
                                  const constitutive::RegParams& reg, const GalerkinBasis& basis, double dt,
                                  const constitutive::PhysParams& p, const MomentumTerms& terms = {});

// Discrete chemical potential -lap d + f(d) of a director field.
fields::VectorField director_potential(const fields::VectorField& d, double sigma0);

}  // namespace nlc::solver
