#include "nlc/constitutive/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlc/error.hpp"

namespace nlc::constitutive {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::ValidationError, what);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void PhysParams::validate() const {
  for (double v : {mu, lambda, gamma, R, alpha, kappa_lo, kappa_hi, sigma0, nu, kappa_relax})
    require(finite(v), "physical parameters must be finite");
  require(mu > 0.0, "μ must be positive");
  require(lambda + 2.0 * mu / 3.0 >= 0.0, "λ + 2μ/3 must be nonnegative");
  require(gamma > 1.5, "γ must exceed 3/2");
  require(R > 0.0, "R must be positive");
  require(alpha >= 2.0, "α must be at least 2");
  require(kappa_lo > 0.0 && kappa_lo <= kappa_hi, "conductivity bounds must satisfy 0 < κ̲ ≤ κ̄");
  require(sigma0 > 0.0, "σ₀ must be positive");
  require(nu > 0.0, "ν must be positive");
  require(kappa_relax > 0.0, "κ_relax must be positive");
}

void RegParams::validate(const PhysParams& p) const {
  require(finite(eps) && finite(delta) && finite(beta), "regularization parameters must be finite");
  require(eps >= 0.0, "ε must be nonnegative");
  require(delta >= 0.0, "δ must be nonnegative");
  require(beta > std::max(4.0, p.gamma), "β must exceed max{4,γ}");
  require(n >= 1, "Galerkin dimension n must be at least 1");
}

}  // namespace nlc::constitutive
