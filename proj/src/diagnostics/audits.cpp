#include "nlc/diagnostics/audits.hpp"

#include <algorithm>
#include <cmath>

#include "nlc/constitutive/renormalization.hpp"
#include "nlc/error.hpp"
#include "nlc/fields/operators.hpp"

namespace nlc::diagnostics {

using fields::ScalarField;
using fields::VectorField;

VectorField bogovskii_surrogate(const ScalarField& h) { return fields::gradient(fields::inverse_laplacian_neumann(h)); }

double bogovskii_tangential_trace(const VectorField& b) {
  const fields::Grid& g = b.grid();
  if (g.dim() == 1) return 0.0;
  double m = 0;
  const int nx = g.points(0), ny = g.points(1);
  for (int j = 0; j < ny; ++j) {
    m = std::max(m, std::abs(b[1][g.index(0, j)]));
    m = std::max(m, std::abs(b[1][g.index(nx - 1, j)]));
  }
  for (int i = 0; i < nx; ++i) {
    m = std::max(m, std::abs(b[0][g.index(i, 0)]));
    m = std::max(m, std::abs(b[0][g.index(i, ny - 1)]));
  }
  return m;
}

double pressure_weight_density(const solver::State& s, const constitutive::RegParams& reg,
                               const constitutive::PhysParams& p) {
  ScalarField w(s.grid(), fields::Parity::neumann());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double r = s.rho[i];
    double pr = std::pow(r, p.gamma) + p.R * r * s.theta[i];
    if (reg.delta != 0.0) pr += reg.delta * std::pow(r, reg.beta);
    w[i] = pr * r;
  }
  return fields::integrate(w);
}

double pressure_weight(const std::vector<solver::State>& traj, const constitutive::RegParams& reg,
                       const constitutive::PhysParams& p) {
  double total = 0;
  for (std::size_t n = 1; n < traj.size(); ++n)
    total += (traj[n].t - traj[n - 1].t) * pressure_weight_density(traj[n], reg, p);
  return total;
}

double oscillation_defect(const std::vector<ScalarField>& rho_seq, const std::vector<ScalarField>& rho_ref,
                          double gamma, const std::vector<double>& dt_weights) {
  if (rho_seq.size() != rho_ref.size())
    throw Error(ErrorKind::GridMismatch, "oscillation defect needs matched snapshot lists");
  if (!dt_weights.empty() && dt_weights.size() != rho_seq.size())
    throw Error(ErrorKind::ValidationError, "one time weight per snapshot required");
  double sup = 0;
  for (double k : {1.0, 2.0, 4.0, 8.0}) {
    double acc = 0;
    for (std::size_t n = 0; n < rho_seq.size(); ++n) {
      fields::require_same_grid(rho_seq[n].grid(), rho_ref[n].grid(), "oscillation_defect");
      ScalarField d(rho_seq[n].grid(), fields::Parity::neumann());
      for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = std::pow(std::abs(constitutive::truncation_T(rho_seq[n][i], k) -
                                 constitutive::truncation_T(rho_ref[n][i], k)),
                        gamma + 1.0);
      acc += (dt_weights.empty() ? 1.0 : dt_weights[n]) * fields::integrate(d);
    }
    sup = std::max(sup, acc);
  }
  return sup;
}

}  // namespace nlc::diagnostics
