#include "nlc/constitutive/laws.hpp"

#include <cmath>

#include "nlc/error.hpp"
#include "nlc/fields/operators.hpp"

namespace nlc::constitutive {

using fields::Parity;
using fields::ScalarField;
using fields::VectorField;

namespace {

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0)) throw Error(ErrorKind::NegativeInput, std::string(name) + " must be nonnegative");
}

}  // namespace

double pressure(double rho, double theta, const PhysParams& p) {
  require_nonnegative(rho, "density");
  require_nonnegative(theta, "temperature");
  return std::pow(rho, p.gamma) + p.R * rho * theta;
}

double artificial_pressure(double rho, double delta, double beta) {
  require_nonnegative(rho, "density");
  if (delta == 0.0) return 0.0;
  return delta * std::pow(rho, beta);
}

Tensor viscous_stress(const Tensor& grad_u, const PhysParams& p) {
  const auto dim = grad_u.rows();
  Tensor s = p.mu * (grad_u + grad_u.transpose());
  s += p.lambda * grad_u.trace() * Tensor::Identity(dim, dim);
  return s;
}

double viscous_dissipation(const Tensor& grad_u, const PhysParams& p) {
  return viscous_stress(grad_u, p).cwiseProduct(grad_u).sum();
}

double heat_conductivity(double theta, const PhysParams& p) {
  require_nonnegative(theta, "temperature");
  return p.kappa_lo * (1.0 + std::pow(theta, p.alpha));
}

double kappa_primitive(double theta, const PhysParams& p) {
  require_nonnegative(theta, "temperature");
  return p.kappa_lo * (theta + std::pow(theta, p.alpha + 1.0) / (p.alpha + 1.0));
}

double gl_potential(const Vec3& d, double sigma0) {
  const double s = d.squaredNorm() - 1.0;
  return s * s / (4.0 * sigma0 * sigma0);
}

Vec3 gl_force(const Vec3& d, double sigma0) {
  // Gradient of gl_potential.
  return (d.squaredNorm() - 1.0) / (sigma0 * sigma0) * d;
}

Tensor ericksen_stress(const DirectorGradient& grad_d, double F) {
  const auto dim = grad_d.cols();
  Tensor e = grad_d.transpose() * grad_d;
  e -= (0.5 * grad_d.squaredNorm() + F) * Tensor::Identity(dim, dim);
  return e;
}

double entropy(double rho, double theta) {
  if (!(rho > 0.0) || !(theta > 0.0))
    throw Error(ErrorKind::NonPositiveInput, "entropy needs positive density and temperature");
  return std::log(theta) - std::log(rho);
}

double elastic_energy_density(double rho, const PhysParams& p) {
  return std::pow(rho, p.gamma) / (p.gamma - 1.0);
}

double artificial_energy_density(double rho, const RegParams& reg) {
  if (reg.delta == 0.0) return 0.0;
  return reg.delta * std::pow(rho, reg.beta) / (reg.beta - 1.0);
}

double pressure_potential_derivative(double rho, const PhysParams& p, const RegParams& reg) {
  double v = p.gamma / (p.gamma - 1.0) * std::pow(rho, p.gamma - 1.0);
  if (reg.delta != 0.0) v += reg.delta * reg.beta / (reg.beta - 1.0) * std::pow(rho, reg.beta - 1.0);
  return v;
}

// ---------------------------------------------------------------------------

ScalarField heat_conductivity(const ScalarField& theta, const PhysParams& p) {
  return theta.map([&](double t) { return heat_conductivity(t, p); });
}

ScalarField kappa_primitive(const ScalarField& theta, const PhysParams& p) {
  return theta.map([&](double t) { return kappa_primitive(t, p); });
}

HeatFlux heat_flux(const ScalarField& theta, const PhysParams& p) {
  for (double t : theta.values()) require_nonnegative(t, "temperature");
  HeatFlux out;
  out.degenerate = p.kappa_lo == 0.0;
  const ScalarField kappa = theta.map([&](double t) { return p.kappa_lo * (1.0 + std::pow(t, p.alpha)); });
  out.q = fields::gradient(theta);
  for (auto& c : out.q.comp) c = -1.0 * (kappa * c);
  return out;
}

ScalarField gl_potential(const VectorField& d, double sigma0) {
  const auto& g = d.grid();
  ScalarField out(g, Parity::neumann());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = gl_potential(Vec3(d[0][i], d[1][i], d[2][i]), sigma0);
  return out;
}

VectorField gl_force(const VectorField& d, double sigma0) {
  VectorField f = d;
  const auto& g = d.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 v = gl_force(Vec3(d[0][i], d[1][i], d[2][i]), sigma0);
    for (int k = 0; k < 3; ++k) f[k][i] = v[k];
  }
  return f;
}

std::vector<std::vector<ScalarField>> velocity_gradient(const VectorField& u) {
  std::vector<std::vector<ScalarField>> g;
  for (const auto& c : u.comp) g.push_back(fields::gradient(c).comp);
  return g;
}

std::vector<std::vector<ScalarField>> viscous_stress(const VectorField& u, const PhysParams& p) {
  const auto grad = velocity_gradient(u);
  const std::size_t dim = u.size();
  ScalarField div = grad[0][0];
  for (std::size_t i = 1; i < dim; ++i) div += grad[i][i];
  std::vector<std::vector<ScalarField>> s(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      ScalarField sij = p.mu * (grad[i][j] + grad[j][i]);
      if (i == j) sij.axpy(p.lambda, div);
      s[i].push_back(std::move(sij));
    }
  return s;
}

ScalarField viscous_dissipation(const VectorField& u, const PhysParams& p) {
  const auto grad = velocity_gradient(u);
  const auto s = viscous_stress(u, p);
  ScalarField out(u.grid(), Parity::neumann());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) out += s[i][j] * grad[i][j];
  return out;
}

std::vector<std::vector<ScalarField>> ericksen_stress(const VectorField& d, double sigma0) {
  const auto& g = d.grid();
  const int dim = g.dim();
  std::vector<VectorField> grad;
  for (const auto& c : d.comp) grad.push_back(fields::gradient(c));
  ScalarField iso = gl_potential(d, sigma0);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < dim; ++i) iso.axpy(0.5, grad[k][i] * grad[k][i]);
  std::vector<std::vector<ScalarField>> e(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      ScalarField eij = grad[0][i] * grad[0][j];
      for (int k = 1; k < 3; ++k) eij += grad[k][i] * grad[k][j];
      if (i == j) eij -= iso;
      e[i].push_back(std::move(eij));
    }
  return e;
}

}  // namespace nlc::constitutive
