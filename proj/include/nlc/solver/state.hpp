#pragma once

#include <iosfwd>

#include "nlc/fields/field.hpp"

namespace nlc::solver {

struct State {
  double t = 0.0;
  fields::ScalarField rho;
  fields::VectorField u;
  fields::ScalarField theta;
  fields::VectorField d;

  const fields::Grid& grid() const { return rho.grid(); }
  // Shared grid, expected parities, nonnegative density and temperature.
  void validate() const;
};

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 0.05;
  double picard_tol = 1e-9;
  int picard_max = 50;
  bool dealias = true;

  void validate() const;
};

// Text snapshot: GRID and TIME lines followed by FIELD blocks
// rho, u_x[, u_y], theta, d_1, d_2, d_3.
void write_state(std::ostream& os, const State& s);
State read_state(std::istream& is);

}  // namespace nlc::solver
