#pragma once

#include <limits>
#include <string>
#include <vector>

#include "nlc/constitutive/params.hpp"
#include "nlc/solver/galerkin.hpp"
#include "nlc/solver/state.hpp"

namespace nlc::solver {

// Raw data: density, momentum, temperature and director.
struct InitialData {
  fields::ScalarField rho;
  fields::VectorField m;
  fields::ScalarField theta;
  fields::VectorField d;
};

struct TemperatureBounds {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

// Smooths the density with the dealiasing filter and clips it to
// [delta, delta^{-1/(2 beta)}] (no clipping when delta = 0). The momentum is
// kept where the regularized density is not below the raw one (up to
// round-off) and zeroed elsewhere; theta is clipped to the bounds; u in X_n
// solves M(rho) c = <m, eta>.
// Throws InvalidInitialData for negative density, nonpositive temperature,
// momentum on vacuum, or non-finite values.
State regularize_initial_data(const InitialData& raw, const constitutive::RegParams& reg,
                              const GalerkinBasis& basis, const TemperatureBounds& bounds = {});

// Named closed-form presets on the given grid, with X = pi x / Lx, Y = pi y / Ly
// (Y = 0 in 1D):
//   equilibrium     rho = 1, m = 0, theta = 1, d = e1
//   density-bump    rho = 1 + 0.3 cos X cos Y
//   director-twist  d = (cos phi, sin phi, 0), phi = 0.6 cos X cos Y
//   thermal-spot    theta = 1 + 0.5 cos X cos Y
//   coupled         rho = 1 + 0.2 cos X cos Y, u = (0.2 sin X cos Y, -0.1 cos X sin 2Y),
//                   m = rho u, theta = 1 + 0.3 cos 2X cos Y, phi = 0.5 cos X cos 2Y
// Unlisted fields take their equilibrium values.
InitialData preset(const std::string& name, const fields::Grid& grid);
const std::vector<std::string>& preset_names();

}  // namespace nlc::solver
