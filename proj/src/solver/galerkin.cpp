#include "nlc/solver/galerkin.hpp"

#include <map>
#include <string>

#include "nlc/error.hpp"
#include "nlc/fields/spectral.hpp"

namespace nlc::solver {

using fields::Basis;
using fields::Grid;
using fields::Parity;
using fields::ScalarField;
using fields::VectorField;

GalerkinBasis::GalerkinBasis(const Grid& grid, int n) : grid_(grid), n_(n) {
  if (!grid.valid()) throw Error(ErrorKind::ValidationError, "Galerkin basis needs a grid");
  if (n < 1) throw Error(ErrorKind::ValidationError, "Galerkin dimension n must be at least 1");
  for (int a = 0; a < grid.dim(); ++a)
    if (n > grid.dealias_cutoff(a))
      throw Error(ErrorKind::ValidationError,
                  "Galerkin dimension n = " + std::to_string(n) + " exceeds the dealiasing cutoff " +
                      std::to_string(grid.dealias_cutoff(a)));
  if (grid.dim() == 1) {
    for (int k = 1; k <= n; ++k) modes_.push_back({0, k, 0, 1.0});
  } else {
    for (int kx = 1; kx <= n; ++kx)
      for (int ky = 0; ky <= n; ++ky) modes_.push_back({0, kx, ky, 1.0});
    for (int kx = 0; kx <= n; ++kx)
      for (int ky = 1; ky <= n; ++ky) modes_.push_back({1, kx, ky, 1.0});
  }
  for (auto& m : modes_) m.norm = std::sqrt(fields::mode_norm2(grid, Parity::velocity(m.comp), m.kx, m.ky));
}

Eigen::VectorXd GalerkinBasis::project(const VectorField& u) const {
  if (static_cast<int>(u.size()) != grid_.dim())
    throw Error(ErrorKind::ValidationError, "velocity has the wrong number of components");
  std::vector<std::vector<double>> coeffs;
  for (int c = 0; c < grid_.dim(); ++c) {
    fields::require_same_grid(grid_, u[c].grid(), "GalerkinBasis::project");
    if (u[c].parity() != Parity::velocity(c)) throw Error(ErrorKind::ParityMismatch, "velocity component parity");
    coeffs.push_back(fields::to_spectral(u[c]));
  }
  Eigen::VectorXd out(size());
  for (int i = 0; i < size(); ++i) {
    const auto& m = modes_[i];
    out[i] = coeffs[m.comp][grid_.index(m.kx, m.ky)] * m.norm;
  }
  return out;
}

VectorField GalerkinBasis::synthesize(const Eigen::VectorXd& c) const {
  if (c.size() != size()) throw Error(ErrorKind::ValidationError, "coefficient vector has the wrong length");
  std::vector<std::vector<double>> coeffs(grid_.dim(), std::vector<double>(grid_.size(), 0.0));
  for (int i = 0; i < size(); ++i) {
    const auto& m = modes_[i];
    coeffs[m.comp][grid_.index(m.kx, m.ky)] = c[i] / m.norm;
  }
  VectorField u;
  u.kind = fields::VectorKind::Velocity;
  for (int a = 0; a < grid_.dim(); ++a) u.comp.push_back(fields::from_spectral(grid_, Parity::velocity(a), coeffs[a]));
  return u;
}

Eigen::MatrixXd GalerkinBasis::mass_matrix(const ScalarField& rho) const {
  fields::require_same_grid(grid_, rho.grid(), "mass_matrix");
  if (rho.parity() != Parity::neumann()) throw Error(ErrorKind::ParityMismatch, "density must be a cosine field");
  const std::vector<double> r = fields::to_spectral(rho);
  const int dim = grid_.dim();
  const int mx = grid_.intervals(0);
  const int my = dim == 2 ? grid_.intervals(1) : 0;
  auto fold = [](int m, int big) { return m <= big ? m : 2 * big - m; };
  // <rho, cos(ax X) cos(ay Y)>_h
  auto G = [&](int ax, int ay) {
    const int fx = fold(ax, mx);
    if (dim == 1) return r[grid_.index(fx, 0)] * grid_.mode_norm2(0, Basis::Cos, fx);
    const int fy = fold(ay, my);
    return r[grid_.index(fx, fy)] * grid_.mode_norm2(0, Basis::Cos, fx) * grid_.mode_norm2(1, Basis::Cos, fy);
  };

  const int n = size();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& a = modes_[i];
    for (int j = i; j < n; ++j) {
      const auto& b = modes_[j];
      if (a.comp != b.comp) continue;
      // sin*sin = (cos(k-l) - cos(k+l))/2, cos*cos = (cos(k-l) + cos(k+l))/2
      const double sx = a.comp == 0 ? -1.0 : 1.0;
      const int dx = std::abs(a.kx - b.kx), px = a.kx + b.kx;
      double v;
      if (dim == 1) {
        v = 0.5 * (G(dx, 0) + sx * G(px, 0));
      } else {
        const double sy = a.comp == 1 ? -1.0 : 1.0;
        const int dy = std::abs(a.ky - b.ky), py = a.ky + b.ky;
        v = 0.25 * (G(dx, dy) + sy * G(dx, py) + sx * G(px, dy) + sx * sy * G(px, py));
      }
      v /= a.norm * b.norm;
      M(i, j) = v;
      M(j, i) = v;
    }
  }
  return M;
}

Eigen::MatrixXd GalerkinBasis::viscous_matrix(const constitutive::PhysParams& p) const {
  const int n = size();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  auto w2 = [&](const VelocityMode& m) {
    double s = grid_.wavenumber(0, m.kx) * grid_.wavenumber(0, m.kx);
    if (grid_.dim() == 2) s += grid_.wavenumber(1, m.ky) * grid_.wavenumber(1, m.ky);
    return s;
  };
  // Derivative factor of div eta along the component's own axis.
  auto dfac = [&](const VelocityMode& m) { return grid_.wavenumber(m.comp, m.comp == 0 ? m.kx : m.ky); };
  std::map<std::pair<int, int>, std::vector<int>> by_wave;
  for (int i = 0; i < n; ++i) by_wave[{modes_[i].kx, modes_[i].ky}].push_back(i);
  for (int i = 0; i < n; ++i) A(i, i) = p.mu * w2(modes_[i]);
  for (const auto& [k, idx] : by_wave) {
    const double cc = fields::mode_norm2(grid_, Parity::neumann(), k.first, k.second);
    for (int i : idx)
      for (int j : idx)
        A(i, j) += (p.mu + p.lambda) * dfac(modes_[i]) * dfac(modes_[j]) * cc / (modes_[i].norm * modes_[j].norm);
  }
  return A;
}

}  // namespace nlc::solver
