#pragma once

#include <Eigen/Dense>

#include "nlc/constitutive/params.hpp"
#include "nlc/fields/field.hpp"

namespace nlc::constitutive {

// dim x dim tensors with dim <= 3; grad(i, j) = d u_i / d x_j.
using Tensor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;
// 3 x dim director gradient; grad_d(k, i) = d d_k / d x_i.
using DirectorGradient = Eigen::Matrix<double, 3, Eigen::Dynamic, 0, 3, 3>;
using Vec3 = Eigen::Vector3d;

// ---- pointwise laws --------------------------------------------------------

double pressure(double rho, double theta, const PhysParams& p);
double artificial_pressure(double rho, double delta, double beta);

Tensor viscous_stress(const Tensor& grad_u, const PhysParams& p);
// S : grad u, nonnegative when mu > 0 and lambda + 2 mu / 3 >= 0 (dim <= 3).
double viscous_dissipation(const Tensor& grad_u, const PhysParams& p);

double heat_conductivity(double theta, const PhysParams& p);
double kappa_primitive(double theta, const PhysParams& p);

double gl_potential(const Vec3& d, double sigma0);
Vec3 gl_force(const Vec3& d, double sigma0);

Tensor ericksen_stress(const DirectorGradient& grad_d, double F);

double entropy(double rho, double theta);

// Pressure potential Pi(rho) = rho^gamma/(gamma-1) + delta rho^beta/(beta-1)
// and its derivative; rho * Pi'(rho) - Pi(rho) is the full pressure rho^gamma + delta rho^beta.
double elastic_energy_density(double rho, const PhysParams& p);
double artificial_energy_density(double rho, const RegParams& reg);
double pressure_potential_derivative(double rho, const PhysParams& p, const RegParams& reg);

// ---- field-level helpers ---------------------------------------------------

struct HeatFlux {
  fields::VectorField q;
  bool degenerate = false;  // conductivity identically zero
};
HeatFlux heat_flux(const fields::ScalarField& theta, const PhysParams& p);

fields::ScalarField heat_conductivity(const fields::ScalarField& theta, const PhysParams& p);
fields::ScalarField kappa_primitive(const fields::ScalarField& theta, const PhysParams& p);
fields::ScalarField gl_potential(const fields::VectorField& d, double sigma0);
fields::VectorField gl_force(const fields::VectorField& d, double sigma0);

// Velocity gradient components grad[i][j] = d u_i / d x_j.
std::vector<std::vector<fields::ScalarField>> velocity_gradient(const fields::VectorField& u);
// S(u) : grad u as a nodal field.
fields::ScalarField viscous_dissipation(const fields::VectorField& u, const PhysParams& p);
// Components of S(u) (cosine / sine-sine parity as produced by differentiation).
std::vector<std::vector<fields::ScalarField>> viscous_stress(const fields::VectorField& u, const PhysParams& p);
// Components of the Ericksen stress of a director field.
std::vector<std::vector<fields::ScalarField>> ericksen_stress(const fields::VectorField& d, double sigma0);

}  // namespace nlc::constitutive
