#pragma once

#include <vector>

#include <Eigen/Dense>

#include "nlc/constitutive/params.hpp"
#include "nlc/fields/field.hpp"

namespace nlc::solver {

// One velocity basis function: component `comp` carries
// sin(k_own X_own) cos(k_other X_other), normalized in the discrete inner product.
struct VelocityMode {
  int comp = 0;
  int kx = 0;
  int ky = 0;
  double norm = 1.0;
};

// Orthonormal velocity space X_n: for each component the own-axis index runs
// over 1..n and the transverse index over 0..n.
class GalerkinBasis {
 public:
  GalerkinBasis() = default;
  GalerkinBasis(const fields::Grid& grid, int n);

  const fields::Grid& grid() const { return grid_; }
  int n() const { return n_; }
  int size() const { return static_cast<int>(modes_.size()); }
  const std::vector<VelocityMode>& modes() const { return modes_; }

  // <u, eta_i> for every basis function.
  Eigen::VectorXd project(const fields::VectorField& u) const;
  fields::VectorField synthesize(const Eigen::VectorXd& c) const;
  // L2 projection onto X_n.
  fields::VectorField apply(const fields::VectorField& u) const { return synthesize(project(u)); }

  // M_ij = <rho eta_i, eta_j>; rho must be a cosine field.
  Eigen::MatrixXd mass_matrix(const fields::ScalarField& rho) const;
  // A_ij = <S(eta_j), grad eta_i>.
  Eigen::MatrixXd viscous_matrix(const constitutive::PhysParams& p) const;

 private:
  fields::Grid grid_;
  int n_ = 0;
  std::vector<VelocityMode> modes_;
};

}  // namespace nlc::solver
