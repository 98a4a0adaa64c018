#include "nlc/io/mms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nlc/constitutive/laws.hpp"
#include "nlc/error.hpp"
#include "nlc/fields/operators.hpp"
#include "nlc/solver/galerkin.hpp"

namespace nlc::io {

using fields::Parity;
using fields::ScalarField;
using fields::VectorField;
using fields::VectorKind;

namespace {

Analytic constant(double c) {
  return {[c](double, double, double) { return c; }, [](double, double, double) { return 0.0; }};
}

Analytic still(SpaceTimeFn f) { return {std::move(f), [](double, double, double) { return 0.0; }}; }

MMSCase equilibrium() {
  return {"equilibrium", constant(1.0), {constant(0.0), constant(0.0)}, constant(1.0),
          {constant(1.0), constant(0.0), constant(0.0)}};
}

MMSCase steady() {
  MMSCase c;
  c.name = "steady";
  c.rho = still([](double, double X, double Y) { return 0.5 + 0.3 / (1.6 - std::cos(X) * std::cos(Y)); });
  c.theta = still([](double, double X, double Y) { return 0.8 + 0.3 / (1.8 - std::cos(X) * std::cos(Y)); });
  c.u[0] = still([](double, double X, double Y) { return 0.1 * std::sin(X) * std::cos(Y); });
  c.u[1] = still([](double, double X, double Y) { return -0.05 * std::cos(X) * std::sin(Y); });
  auto phi = [](double X, double Y) { return 0.4 / (1.6 - std::cos(X) * std::cos(Y)); };
  c.d[0] = still([phi](double, double X, double Y) { return std::cos(phi(X, Y)); });
  c.d[1] = still([phi](double, double X, double Y) { return std::sin(phi(X, Y)); });
  c.d[2] = constant(0.0);
  return c;
}

MMSCase transient() {
  MMSCase c;
  c.name = "transient";
  c.rho = {[](double t, double X, double Y) { return 1.0 + 0.2 * std::cos(X) * std::cos(Y) * (1.0 + std::sin(10 * t)); },
           [](double t, double X, double Y) { return 2.0 * std::cos(X) * std::cos(Y) * std::cos(10 * t); }};
  c.theta = {[](double t, double X, double Y) { return 1.0 + 0.2 * std::cos(2 * X) * std::cos(Y) * std::cos(10 * t); },
             [](double t, double X, double Y) { return -2.0 * std::cos(2 * X) * std::cos(Y) * std::sin(10 * t); }};
  c.u[0] = {[](double t, double X, double Y) { return (1.0 + std::sin(10 * t)) * 0.1 * std::sin(X) * std::cos(Y); },
            [](double t, double X, double Y) { return 10 * std::cos(10 * t) * 0.1 * std::sin(X) * std::cos(Y); }};
  c.u[1] = {[](double t, double X, double Y) { return -(1.0 + std::sin(10 * t)) * 0.05 * std::cos(X) * std::sin(2 * Y); },
            [](double t, double X, double Y) { return -10 * std::cos(10 * t) * 0.05 * std::cos(X) * std::sin(2 * Y); }};
  c.d[0] = constant(1.0);
  c.d[1] = {[](double t, double X, double Y) { return 0.3 * std::cos(X) * std::cos(Y) * std::cos(10 * t); },
            [](double t, double X, double Y) { return -3.0 * std::cos(X) * std::cos(Y) * std::sin(10 * t); }};
  c.d[2] = still([](double, double X, double) { return 0.1 * std::cos(2 * X); });
  return c;
}

struct Sampler {
  const fields::Grid& g;
  double t;

  ScalarField operator()(const SpaceTimeFn& f, Parity par = Parity::neumann()) const {
    const double sx = std::numbers::pi / g.extent(0);
    const double sy = g.dim() == 2 ? std::numbers::pi / g.extent(1) : 0.0;
    return ScalarField::sample(g, par, [&](double x, double y) { return f(t, sx * x, sy * y); });
  }
};

// Sine-type sampling zeroes the wall nodes, so the walls are checked on the
// analytic function itself.
void check_velocity_walls(const SpaceTimeFn& f, const Sampler& s, int comp) {
  const fields::Grid& g = s.g;
  const double sx = std::numbers::pi / g.extent(0);
  const double sy = g.dim() == 2 ? std::numbers::pi / g.extent(1) : 0.0;
  const int other = g.dim() == 2 ? g.points(1 - comp) : 1;
  for (int j = 0; j < other; ++j)
    for (double wall : {0.0, std::numbers::pi}) {
      const double along = g.dim() == 2 ? (comp == 0 ? sy : sx) * g.node(1 - comp, j) : 0.0;
      const double v = comp == 0 ? f(s.t, wall, along) : f(s.t, along, wall);
      if (std::abs(v) > 1e-12)
        throw Error(ErrorKind::ParityMismatch, "manufactured velocity component does not vanish on its walls");
    }
}

VectorField velocity(const MMSCase& c, const Sampler& s, bool time_derivative) {
  VectorField u;
  u.kind = VectorKind::Velocity;
  for (int k = 0; k < s.g.dim(); ++k) {
    const auto& a = c.u[k];
    const SpaceTimeFn& f = time_derivative ? a.dt : a.value;
    check_velocity_walls(f, s, k);
    u.comp.push_back(s(f, Parity::velocity(k)));
  }
  return u;
}

VectorField director(const MMSCase& c, const Sampler& s, bool time_derivative) {
  VectorField d;
  d.kind = VectorKind::Director;
  for (const auto& a : c.d) d.comp.push_back(s(time_derivative ? a.dt : a.value));
  return d;
}

}  // namespace

MMSCase mms_case(const std::string& name) {
  if (name == "equilibrium") return equilibrium();
  if (name == "steady") return steady();
  if (name == "transient") return transient();
  throw Error(ErrorKind::ValidationError, "unknown manufactured case '" + name + "'");
}

const std::vector<std::string>& mms_case_names() {
  static const std::vector<std::string> names = {"equilibrium", "steady", "transient"};
  return names;
}

solver::State mms_state(const MMSCase& c, const fields::Grid& g, double t) {
  const Sampler s{g, t};
  solver::State st;
  st.t = t;
  st.rho = s(c.rho.value);
  st.u = velocity(c, s, false);
  st.theta = s(c.theta.value);
  st.d = director(c, s, false);
  return st;
}

solver::Sources mms_sources(const MMSCase& c, const fields::Grid& g, double t, const constitutive::PhysParams& p,
                            const constitutive::RegParams& reg) {
  const Sampler s{g, t};
  const int dim = g.dim();
  const solver::State q = mms_state(c, g, t);
  const ScalarField rho_t = s(c.rho.dt);
  const ScalarField theta_t = s(c.theta.dt);
  const VectorField u_t = velocity(c, s, true);
  const VectorField d_t = director(c, s, true);
  const ScalarField& rho = q.rho;
  const ScalarField& theta = q.theta;
  const VectorField& u = q.u;
  const VectorField& d = q.d;
  const double delta = reg.delta;

  VectorField m;
  m.kind = VectorKind::Velocity;
  for (int k = 0; k < dim; ++k) m.comp.push_back(rho * u[k]);
  const ScalarField divu = fields::divergence(u);
  const VectorField f = constitutive::gl_force(d, p.sigma0);
  const VectorField mu = solver::director_potential(d, p.sigma0);

  solver::Sources out;

  // rho_t + div(rho u) - eps lap rho
  ScalarField sr = rho_t + fields::divergence(m);
  sr.axpy(-reg.eps, fields::laplacian(rho));
  out.rho = std::move(sr);

  // d_t + u . grad d - kappa_relax (lap d - f(d))
  VectorField sd;
  sd.kind = VectorKind::Director;
  for (std::size_t k = 0; k < 3; ++k) {
    ScalarField v = d_t[k];
    for (int a = 0; a < dim; ++a) v += u[a] * fields::derivative(d[k], a);
    v.axpy(-p.kappa_relax, fields::laplacian(d[k]) - f[k]);
    sd.comp.push_back(std::move(v));
  }
  out.d = std::move(sd);

  // ((delta + rho) theta)_t + div(rho theta u) - div(kappa grad theta) + delta theta^{alpha+1}
  //   + R rho theta div u - (1 - delta) S:grad u - nu kappa_relax |mu|^2
  {
    ScalarField v = add_constant(rho, delta) * theta_t + rho_t * theta;
    VectorField flux;
    flux.kind = VectorKind::Velocity;
    for (int k = 0; k < dim; ++k) flux.comp.push_back(rho * theta * u[k]);
    v += fields::divergence(flux);
    const ScalarField kap = constitutive::heat_conductivity(theta, p);
    VectorField q_heat = fields::gradient(theta);
    for (auto& qc : q_heat.comp) qc = kap * qc;
    v -= fields::divergence(q_heat);
    if (delta != 0.0) v += theta.map([&](double x) { return delta * std::pow(x, p.alpha + 1.0); });
    v.axpy(p.R, rho * theta * divu);
    v.axpy(-(1.0 - delta), constitutive::viscous_dissipation(u, p));
    v.axpy(-p.nu * p.kappa_relax, fields::dot(mu, mu));
    out.theta = std::move(v);
  }

  // (rho u)_t + div(rho u (x) u) + rho grad Pi'(rho) + grad(R rho theta) - nu sum mu_k grad d_k
  //   - mu lap u - (mu + lambda) grad div u + eps grad rho . grad u
  {
    const ScalarField dpi =
        rho.map([&](double r) { return constitutive::pressure_potential_derivative(r, p, reg); });
    const VectorField gpi = fields::gradient(dpi);
    const VectorField gth = fields::gradient(p.R * (rho * theta));
    const VectorField gdiv = fields::gradient(divu);
    const VectorField grho = fields::gradient(rho);
    VectorField sm;
    sm.kind = VectorKind::Velocity;
    for (int i = 0; i < dim; ++i) {
      ScalarField v = rho * u_t[i] + rho_t * u[i];
      for (int j = 0; j < dim; ++j) {
        v += fields::derivative(m[j] * u[i], j);
        v.axpy(reg.eps, grho[j] * fields::derivative(u[i], j));
      }
      v += rho * gpi[i];
      v += gth[i];
      for (std::size_t k = 0; k < 3; ++k) v.axpy(-p.nu, mu[k] * fields::derivative(d[k], i));
      v.axpy(-p.mu, fields::laplacian(u[i]));
      v.axpy(-(p.mu + p.lambda), gdiv[i]);
      sm.comp.push_back(std::move(v));
    }
    out.m = std::move(sm);
  }
  return out;
}

double MMSError::max() const { return std::max({rho, u, theta, d}); }

MMSError mms_error(const MMSCase& c, const fields::Grid& g, const constitutive::PhysParams& p,
                   const constitutive::RegParams& reg, const solver::SolverConfig& cfg) {
  solver::Problem pb;
  pb.phys = p;
  pb.reg = reg;
  pb.cfg = cfg;
  pb.sources = [&](double t) { return mms_sources(c, g, t, p, reg); };
  const solver::GalerkinBasis basis(g, reg.n);
  solver::State s0 = mms_state(c, g, 0.0);
  s0.u = basis.synthesize(basis.project(s0.u));
  const auto res = solver::run(s0, pb);
  const solver::State exact = mms_state(c, g, res.final_state.t);
  const auto& s = res.final_state;

  auto rel = [](double err, double ref) { return ref > 0 ? err / ref : err; };
  MMSError e;
  e.nx = g.points(0);
  e.dt = cfg.dt;
  e.rho = rel(fields::l2_norm(s.rho - exact.rho), fields::l2_norm(exact.rho));
  e.u = rel(fields::l2_norm(s.u - exact.u), fields::l2_norm(exact.u));
  e.theta = rel(fields::l2_norm(s.theta - exact.theta), fields::l2_norm(exact.theta));
  e.d = rel(fields::l2_norm(s.d - exact.d), fields::l2_norm(exact.d));
  return e;
}

MMSStudy mms_study(const MMSCase& c, const fields::Grid& base, const constitutive::PhysParams& p,
                   const constitutive::RegParams& reg, const solver::SolverConfig& cfg) {
  MMSStudy st;
  for (int f : {1, 2}) {
    const fields::Grid g = base.dim() == 1
                               ? fields::Grid::line(f * base.points(0), base.extent(0))
                               : fields::Grid::box(f * base.points(0), f * base.points(1), base.extent(0), base.extent(1));
    st.spatial.push_back(mms_error(c, g, p, reg, cfg));
  }
  st.spatial_ratio = st.spatial[0].max() / std::max(st.spatial[1].max(), 1e-300);
  st.spatial_order = std::log2(st.spatial_ratio);
  solver::SolverConfig tc = cfg;
  for (int k = 0; k < 3; ++k) {
    tc.dt = cfg.dt / (1 << k);
    st.temporal.push_back(mms_error(c, base, p, reg, tc));
  }
  for (std::size_t k = 0; k + 1 < st.temporal.size(); ++k)
    st.temporal_orders.push_back(std::log2(st.temporal[k].max() / std::max(st.temporal[k + 1].max(), 1e-300)));
  return st;
}

}  // namespace nlc::io
