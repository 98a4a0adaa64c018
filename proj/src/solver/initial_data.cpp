#include "nlc/solver/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>

#include "nlc/error.hpp"
#include "nlc/fields/operators.hpp"

namespace nlc::solver {

using fields::Grid;
using fields::Parity;
using fields::ScalarField;
using fields::VectorField;

namespace {

bool all_finite(const ScalarField& f) {
  for (double v : f.values())
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

State regularize_initial_data(const InitialData& raw, const constitutive::RegParams& reg, const GalerkinBasis& basis,
                              const TemperatureBounds& bounds) {
  const Grid& g = basis.grid();
  auto bad = [](const std::string& m) { return Error(ErrorKind::InvalidInitialData, m); };
  for (const ScalarField* f : {&raw.rho, &raw.theta}) fields::require_same_grid(g, f->grid(), "initial data");
  if (static_cast<int>(raw.m.size()) != g.dim() || raw.d.size() != 3) throw bad("initial data has wrong component counts");
  bool finite = all_finite(raw.rho) && all_finite(raw.theta);
  for (const auto& c : raw.m.comp) finite = finite && all_finite(c);
  for (const auto& c : raw.d.comp) finite = finite && all_finite(c);
  if (!finite) throw bad("initial data contains non-finite values");
  if (raw.rho.min() < 0.0) throw bad("initial density is negative");
  if (!(raw.theta.min() > 0.0)) throw bad("initial temperature must be positive");
  for (std::size_t i = 0; i < raw.rho.size(); ++i) {
    if (raw.rho[i] > 0.0) continue;
    for (const auto& c : raw.m.comp)
      if (c[i] != 0.0) throw bad("nonzero momentum on vacuum");
  }

  State s;
  s.t = 0.0;
  s.rho = fields::dealias(raw.rho);
  if (reg.delta > 0.0) {
    const double lo = reg.delta, hi = std::pow(reg.delta, -1.0 / (2.0 * reg.beta));
    for (double& v : s.rho.values()) v = std::clamp(v, lo, hi);
  } else {
    for (double& v : s.rho.values()) v = std::max(v, 0.0);
  }
  if (!(bounds.lo <= bounds.hi)) throw bad("temperature bounds are inverted");
  s.theta = raw.theta.map([&](double v) { return std::clamp(v, bounds.lo, bounds.hi); });
  s.d = raw.d;
  s.d.kind = fields::VectorKind::Director;

  const Eigen::MatrixXd M = basis.mass_matrix(s.rho);
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::SingularMassMatrix, "initial mass matrix is singular");
  VectorField m = raw.m;
  const double tol = 1e-12 * raw.rho.max_abs();
  for (std::size_t i = 0; i < s.rho.size(); ++i)
    if (s.rho[i] < raw.rho[i] - tol)
      for (auto& c : m.comp) c[i] = 0.0;
  s.u = basis.synthesize(llt.solve(basis.project(m)));
  return s;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"equilibrium", "density-bump", "director-twist", "thermal-spot",
                                                 "coupled"};
  return names;
}

InitialData preset(const std::string& name, const Grid& g) {
  const double pi = std::numbers::pi;
  const double lx = g.extent(0);
  const double ly = g.dim() == 2 ? g.extent(1) : 1.0;
  const bool two = g.dim() == 2;
  auto X = [&](double x) { return pi * x / lx; };
  auto Y = [&](double y) { return two ? pi * y / ly : 0.0; };
  auto cosfield = [&](auto f) { return ScalarField::sample(g, Parity::neumann(), [&](double x, double y) { return f(X(x), Y(y)); }); };

  InitialData d;
  d.rho = ScalarField::constant(g, 1.0);
  d.theta = ScalarField::constant(g, 1.0);
  d.m = VectorField::velocity_zero(g);
  d.d = VectorField::director_constant(g, {1.0, 0.0, 0.0});

  auto twist = [&](auto phi) {
    const ScalarField p = cosfield(phi);
    d.d[0] = p.map([](double v) { return std::cos(v); });
    d.d[1] = p.map([](double v) { return std::sin(v); });
  };

  if (name == "equilibrium") {
  } else if (name == "density-bump") {
    d.rho = cosfield([](double a, double b) { return 1.0 + 0.3 * std::cos(a) * std::cos(b); });
  } else if (name == "director-twist") {
    twist([](double a, double b) { return 0.6 * std::cos(a) * std::cos(b); });
  } else if (name == "thermal-spot") {
    d.theta = cosfield([](double a, double b) { return 1.0 + 0.5 * std::cos(a) * std::cos(b); });
  } else if (name == "coupled") {
    d.rho = cosfield([](double a, double b) { return 1.0 + 0.2 * std::cos(a) * std::cos(b); });
    d.theta = cosfield([](double a, double b) { return 1.0 + 0.3 * std::cos(2 * a) * std::cos(b); });
    twist([](double a, double b) { return 0.5 * std::cos(a) * std::cos(2 * b); });
    d.m[0] = d.rho * ScalarField::sample(g, Parity::velocity(0), [&](double x, double y) {
      return 0.2 * std::sin(X(x)) * std::cos(Y(y));
    });
    if (two)
      d.m[1] = d.rho * ScalarField::sample(g, Parity::velocity(1), [&](double x, double y) {
        return -0.1 * std::cos(X(x)) * std::sin(2 * Y(y));
      });
  } else {
    throw Error(ErrorKind::ValidationError, "unknown preset '" + name + "'");
  }
  return d;
}

}  // namespace nlc::solver
