#pragma once

#include "nlc/constitutive/params.hpp"

namespace nlc::constitutive {

// Multiplier h(theta) = omega / (omega + theta) with primitives
//   H(theta) = int_0^theta h,   K_h(theta) = int_0^theta kappa(z) h(z) dz.
// omega = 1 is the (1 + theta)^{-1} family.
struct RenormKernels {
  double h;
  double H;
  double K_h;
};

RenormKernels renorm_kernels(double theta, double omega, const PhysParams& p);

// T(z) = z on [0,1], the Hermite arc on [1,3] (slope 1 -> 0), and 2 beyond;
// T_k(z) = k T(z / k).
double truncation_T(double z, double k);
double truncation_T_prime(double z, double k);
double truncation_T_second(double z, double k);

// L_k(z) = z log z below k and z log k + z int_k^z T_k(s)/s^2 ds above, so
// that z L_k'(z) - L_k(z) = T_k(z).
double truncation_L(double z, double k);

}  // namespace nlc::constitutive
