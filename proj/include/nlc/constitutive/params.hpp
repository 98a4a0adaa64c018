#pragma once

namespace nlc::constitutive {

struct PhysParams {
  double mu = 1.0;          // shear viscosity
  double lambda = 0.0;      // bulk viscosity
  double gamma = 2.0;       // adiabatic exponent
  double R = 1.0;           // gas constant
  double alpha = 2.0;       // conductivity growth exponent
  double kappa_lo = 1.0;    // lower conductivity bound
  double kappa_hi = 1.0;    // upper conductivity bound
  double sigma0 = 1.0;      // penalty scale
  double nu = 1.0;          // elastic coupling
  double kappa_relax = 1.0; // director relaxation

  // Throws ValidationError naming the violated invariant.
  void validate() const;
};

struct RegParams {
  double eps = 0.0;    // artificial viscosity
  double delta = 0.0;  // artificial pressure weight
  double beta = 5.0;   // artificial pressure exponent
  int n = 8;           // Galerkin modes per axis and velocity component

  void validate(const PhysParams& p) const;
};

}  // namespace nlc::constitutive
