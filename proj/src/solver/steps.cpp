#include "nlc/solver/steps.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "nlc/constitutive/laws.hpp"
#include "nlc/error.hpp"
#include "nlc/fields/operators.hpp"

namespace nlc::solver {

using constitutive::PhysParams;
using constitutive::RegParams;
using fields::Parity;
using fields::ScalarField;
using fields::VectorField;
using fields::VectorKind;

namespace {

ScalarField filt(const ScalarField& f, bool on) { return on ? fields::dealias(f) : f; }

// Values below -tol * scale are a genuine loss of positivity; smaller
// excursions are round-off and are clipped to zero.
void enforce_nonnegative(ScalarField& f, double scale, const char* what) {
  const double tol = 1e-12 * std::max(scale, 1e-300);
  if (f.min() < -tol) throw Error(ErrorKind::PositivityLoss, std::string(what) + " became negative");
  for (double& v : f.values()) v = std::max(v, 0.0);
}

double vmax_abs(const VectorField& v) {
  double m = 0.0;
  for (const auto& c : v.comp) m = std::max(m, c.max_abs());
  return m;
}

ScalarField norm2(const VectorField& v) { return fields::dot(v, v); }

}  // namespace

VectorField director_potential(const VectorField& d, double sigma0) {
  VectorField f = constitutive::gl_force(d, sigma0);
  VectorField mu;
  mu.kind = VectorKind::Director;
  for (std::size_t k = 0; k < d.size(); ++k) mu.comp.push_back(f[k] - fields::laplacian(d[k]));
  return mu;
}

// ---- density ---------------------------------------------------------------

DensityUpdate density_update(const ScalarField& rho, const VectorField& u, double eps, double dt, bool dealias,
                             const ScalarField* source) {
  DensityUpdate out;
  out.flux.kind = VectorKind::Velocity;
  for (const auto& uc : u.comp) out.flux.comp.push_back(filt(rho * uc, dealias));
  ScalarField rhs = rho;
  rhs.axpy(-dt, fields::divergence(out.flux));
  if (source) rhs.axpy(dt, *source);
  out.rho = eps > 0.0 ? fields::helmholtz_solve(rhs, 1.0, eps * dt) : rhs;
  enforce_nonnegative(out.rho, rho.max_abs(), "density");
  return out;
}

ScalarField step_density(const ScalarField& rho, const VectorField& u, double eps, double dt) {
  return density_update(rho, u, eps, dt).rho;
}

// ---- director --------------------------------------------------------------

DirectorUpdate director_update(const VectorField& d, const VectorField& u, double dt, const PhysParams& p,
                               bool dealias, const VectorField* source) {
  const double s2 = p.sigma0 * p.sigma0;
  const double kap = p.kappa_relax;
  const int dim = d.grid().dim();

  // Explicit part: d/dt - filter(u . grad d) + kappa d / sigma^2 + s.
  std::vector<ScalarField> base;
  for (std::size_t k = 0; k < 3; ++k) {
    ScalarField adv(d.grid(), Parity::neumann());
    for (int c = 0; c < dim; ++c) adv += u[c] * fields::derivative(d[k], c);
    ScalarField b = (1.0 / dt + kap / s2) * d[k];
    b.axpy(-1.0, filt(adv, dealias));
    if (source) b += (*source)[k];
    base.push_back(std::move(b));
  }

  // Stabilized fixed point for the implicit cubic term.
  DirectorUpdate out;
  VectorField cur = d;
  double stab = 1.5 * norm2(d).max() / s2;
  for (int it = 1;; ++it) {
    const ScalarField n2 = norm2(cur);
    stab = std::max(stab, 1.5 * n2.max() / s2);
    VectorField next;
    next.kind = VectorKind::Director;
    double diff = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      ScalarField rhs = base[k];
      rhs += cur[k] * n2.map([&](double v) { return kap * (stab - v / s2); });
      next.comp.push_back(fields::helmholtz_solve(rhs, 1.0 / dt + kap * stab, kap));
      diff = std::max(diff, (next[k] - cur[k]).max_abs());
    }
    cur = std::move(next);
    if (diff <= 1e-13 * std::max(1.0, vmax_abs(cur))) {
      out.iterations = it;
      break;
    }
    if (it >= 500) throw Error(ErrorKind::PicardDivergence, "director iteration did not converge");
  }

  const ScalarField n2 = norm2(cur);
  out.mu.kind = VectorKind::Director;
  for (std::size_t k = 0; k < 3; ++k) {
    ScalarField f = (n2 * cur[k] - d[k]) * (1.0 / s2);
    out.mu.comp.push_back(f - fields::laplacian(cur[k]));
  }
  out.d = std::move(cur);
  return out;
}

VectorField step_director(const VectorField& d, const VectorField& u, double dt, const PhysParams& p) {
  return director_update(d, u, dt, p).d;
}

// ---- temperature -----------------------------------------------------------

ScalarField temperature_update(const TemperatureInputs& in, const RegParams& reg, const PhysParams& p, double dt,
                               bool dealias) {
  const ScalarField& theta = *in.theta;
  const ScalarField& rho = *in.rho_old;
  const ScalarField& rho_new = *in.rho_new;
  const VectorField& u = *in.u;
  const double delta = reg.delta;

  const ScalarField kap = constitutive::heat_conductivity(theta, p);
  VectorField flux;
  flux.kind = VectorKind::Velocity;
  const ScalarField rt = rho * theta;
  for (const auto& uc : u.comp) flux.comp.push_back(filt(rt * uc, dealias));

  ScalarField rhs = (1.0 / dt) * add_constant(rho, delta) * theta;
  rhs -= fields::divergence(flux);
  rhs.axpy(1.0 - delta, constitutive::viscous_dissipation(u, p));
  if (in.mu) rhs.axpy(p.nu * p.kappa_relax, norm2(*in.mu));
  if (in.source) rhs += *in.source;

  ScalarField lin = (1.0 / dt) * add_constant(rho_new, delta);
  lin.axpy(p.R, rho_new * fields::divergence(u));

  auto coefficient = [&](const ScalarField& th) {
    ScalarField c = lin;
    if (delta != 0.0) c += th.map([&](double v) { return delta * std::pow(std::max(v, 0.0), p.alpha); });
    if (!(c.min() > 0.0)) throw Error(ErrorKind::PositivityLoss, "temperature operator lost positivity");
    return c;
  };

  // Preconditioned Richardson iteration with a constant-coefficient Helmholtz operator.
  ScalarField cur = theta;
  const ScalarField c_init = coefficient(cur);
  const double c0 = 0.5 * (c_init.max() + c_init.min());
  const double k0 = 0.5 * (kap.max() + kap.min());
  for (int it = 1;; ++it) {
    const ScalarField c = coefficient(cur);
    VectorField q = fields::gradient(cur);
    for (auto& qc : q.comp) qc = kap * qc;
    ScalarField r = rhs - c * cur;
    r += fields::divergence(q);
    const ScalarField corr = fields::helmholtz_solve(r, c0, k0);
    cur += corr;
    if (corr.max_abs() <= 1e-13 * std::max(1.0, cur.max_abs())) break;
    if (it >= 1000) throw Error(ErrorKind::PicardDivergence, "temperature iteration did not converge");
  }
  enforce_nonnegative(cur, theta.max_abs(), "temperature");
  return cur;
}

ScalarField step_temperature(const ScalarField& theta, const ScalarField& rho, const VectorField& u,
                             const VectorField& d, const RegParams& reg, const PhysParams& p, double dt) {
  const VectorField mu = director_potential(d, p.sigma0);
  TemperatureInputs in;
  in.theta = &theta;
  in.rho_old = &rho;
  in.rho_new = &rho;
  in.u = &u;
  in.mu = &mu;
  return temperature_update(in, reg, p, dt);
}

// ---- momentum --------------------------------------------------------------

VectorField momentum_update(const MomentumInputs& in, const GalerkinBasis& basis, const RegParams& reg,
                            const PhysParams& p, double dt, bool dealias, const MomentumTerms& terms) {
  const ScalarField& rho = *in.rho_old;
  const ScalarField& rho_new = *in.rho_new;
  const VectorField& u = *in.u_iter;
  const int dim = basis.grid().dim();

  VectorField g = VectorField::velocity_zero(basis.grid());
  if (terms.pressure) {
    const ScalarField dpi =
        rho_new.map([&](double r) { return constitutive::pressure_potential_derivative(std::max(r, 0.0), p, reg); });
    const VectorField gpi = fields::gradient(dpi);
    const VectorField gth = fields::gradient(p.R * (rho_new * *in.theta_new));
    for (int c = 0; c < dim; ++c) {
      g[c] -= rho * filt(gpi[c], dealias);
      g[c] -= gth[c];
    }
  }
  if (terms.ericksen) {
    const VectorField& d = *in.d_old;
    for (std::size_t k = 0; k < 3; ++k) {
      const ScalarField mk = filt((*in.mu)[k], dealias);
      for (int c = 0; c < dim; ++c) g[c].axpy(p.nu, mk * fields::derivative(d[k], c));
    }
  }
  if (terms.convection) {
    const VectorField& F = *in.flux;
    const ScalarField divF = fields::divergence(F);
    for (int c = 0; c < dim; ++c) {
      ScalarField b = divF * u[c];
      for (int j = 0; j < dim; ++j) {
        b += F[j] * fields::derivative(u[c], j);
        b += fields::derivative(F[j] * u[c], j);
      }
      g[c].axpy(-0.5, b);
    }
  }
  if (terms.artificial_viscosity && reg.eps > 0.0) {
    const ScalarField lr = fields::laplacian(rho_new);
    const VectorField gr = fields::gradient(rho_new);
    for (int c = 0; c < dim; ++c) {
      ScalarField b = -(lr * u[c]);
      for (int j = 0; j < dim; ++j) {
        b += gr[j] * fields::derivative(u[c], j);
        b += fields::derivative(gr[j] * u[c], j);
      }
      g[c].axpy(-0.5 * reg.eps, b);
    }
  }
  if (in.source)
    for (int c = 0; c < dim; ++c) g[c] += (*in.source)[c];

  const Eigen::MatrixXd M = basis.mass_matrix(rho_new);
  if (!(rho_new.min() > 1e-14 * std::max(1.0, rho_new.max_abs()))) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 1e-14 * std::max(1.0, es.eigenvalues().maxCoeff())))
      throw Error(ErrorKind::SingularMassMatrix, "mass matrix is singular (vacuum)");
  }
  VectorField mom;
  mom.kind = VectorKind::Velocity;
  for (int c = 0; c < dim; ++c) mom.comp.push_back(rho * (*in.u_old)[c]);

  const Eigen::MatrixXd K = M / dt + basis.viscous_matrix(p);
  const Eigen::VectorXd b = basis.project(mom) / dt + basis.project(g);
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::SingularMassMatrix, "momentum matrix is not positive definite");
  return basis.synthesize(llt.solve(b));
}

VectorField step_momentum(const VectorField& u, const ScalarField& rho, const ScalarField& theta,
                          const VectorField& d, const RegParams& reg, const GalerkinBasis& basis, double dt,
                          const PhysParams& p, const MomentumTerms& terms) {
  const VectorField mu = director_potential(d, p.sigma0);
  VectorField flux;
  flux.kind = VectorKind::Velocity;
  for (const auto& uc : u.comp) flux.comp.push_back(fields::dealias(rho * uc));
  MomentumInputs in;
  in.rho_old = &rho;
  in.rho_new = &rho;
  in.theta_new = &theta;
  in.u_old = &u;
  in.u_iter = &u;
  in.d_old = &d;
  in.mu = &mu;
  in.flux = &flux;
  return momentum_update(in, basis, reg, p, dt, true, terms);
}

}  // namespace nlc::solver
