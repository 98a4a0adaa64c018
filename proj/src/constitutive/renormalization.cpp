#include "nlc/constitutive/renormalization.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "nlc/constitutive/laws.hpp"
#include "nlc/error.hpp"

namespace nlc::constitutive {

namespace {

// int_0^theta z^m / (1 + z) dz for integer m >= 0, by polynomial division.
double power_over_one_plus(double theta, int m) {
  double s = 0.0;
  for (int j = 0; j < m; ++j) {
    const double sign = ((m - 1 - j) % 2 == 0) ? 1.0 : -1.0;
    s += sign * std::pow(theta, j + 1) / (j + 1);
  }
  s += ((m % 2 == 0) ? 1.0 : -1.0) * std::log1p(theta);
  return s;
}

// Middle arc of T on [1, 3]: the Hermite interpolant of (1,1,slope 1) and
// (3,2,slope 0) has a vanishing cubic coefficient.
double arc(double v) { return v - 0.25 * (v - 1.0) * (v - 1.0); }

// G(w) = int_1^w T(v) / v^2 dv for w >= 1.
double arc_integral(double w) {
  auto inner = [](double x) { return -0.25 * (x - 1.0) + 1.5 * std::log(x) + 0.25 * (1.0 / x - 1.0); };
  if (w <= 3.0) return inner(w);
  return inner(3.0) + 2.0 * (1.0 / 3.0 - 1.0 / w);
}

}  // namespace

RenormKernels renorm_kernels(double theta, double omega, const PhysParams& p) {
  if (!(theta >= 0.0)) throw Error(ErrorKind::NegativeInput, "temperature must be nonnegative");
  if (!(omega > 0.0)) throw Error(ErrorKind::NonPositiveInput, "ω must be positive");
  RenormKernels k;
  k.h = omega / (omega + theta);
  k.H = omega * std::log1p(theta / omega);
  const double alpha_int = std::round(p.alpha);
  if (omega == 1.0 && alpha_int == p.alpha && p.alpha >= 0 && p.alpha <= 32) {
    k.K_h = p.kappa_lo * (std::log1p(theta) + power_over_one_plus(theta, static_cast<int>(alpha_int)));
  } else if (theta == 0.0) {
    k.K_h = 0.0;
  } else {
    auto integrand = [&](double z) { return heat_conductivity(z, p) * omega / (omega + z); };
    k.K_h = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, theta, 15, 1e-14);
  }
  return k;
}

double truncation_T(double z, double k) {
  const double v = z / k;
  if (v <= 1.0) return z;
  if (v >= 3.0) return 2.0 * k;
  return k * arc(v);
}

double truncation_T_prime(double z, double k) {
  const double v = z / k;
  if (v <= 1.0) return 1.0;
  if (v >= 3.0) return 0.0;
  return 1.0 - 0.5 * (v - 1.0);
}

double truncation_T_second(double z, double k) {
  const double v = z / k;
  if (v <= 1.0 || v >= 3.0) return 0.0;
  return -0.5 / k;
}

double truncation_L(double z, double k) {
  if (z <= 0.0) return 0.0;
  if (z < k) return z * std::log(z);
  // int_k^z T_k(s)/s^2 ds = int_1^{z/k} T(v)/v^2 dv.
  return z * std::log(k) + z * arc_integral(z / k);
}

}  // namespace nlc::constitutive
