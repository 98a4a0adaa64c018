#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "nlc/constitutive/params.hpp"
#include "nlc/solver/coupled.hpp"
#include "nlc/solver/state.hpp"
#include "nlc/solver/steps.hpp"

namespace nlc::io {

// Functions of (t, X, Y) with the scaled coordinates X = pi x / Lx, Y = pi y / Ly.
using SpaceTimeFn = std::function<double(double t, double X, double Y)>;

// A closed-form field and its time derivative.
struct Analytic {
  SpaceTimeFn value;
  SpaceTimeFn dt;
};

struct MMSCase {
  std::string name;
  Analytic rho;
  std::array<Analytic, 2> u;  // u[1] unused in 1D
  Analytic theta;
  std::array<Analytic, 3> d;
};

// Built-in cases:
//   equilibrium  the constant state rho = theta = 1, u = 0, d = e1
//   steady       rho = 0.5 + 0.3/(1.6 - cos X cos Y), theta = 0.8 + 0.3/(1.8 - cos X cos Y),
//                u = (0.1 sin X cos Y, -0.05 cos X sin Y), d = (cos phi, sin phi, 0),
//                phi = 0.4/(1.6 - cos X cos Y); time independent with analytic, non
//                band-limited profiles
//   transient    rho = 1 + 0.2 cos X cos Y (1 + sin 10t), theta = 1 + 0.2 cos 2X cos Y cos 10t,
//                u = a(t) (0.1 sin X cos Y, -0.05 cos X sin 2Y) with a = 1 + sin 10t,
//                d = (1, 0.3 cos X cos Y cos 10t, 0.1 cos 2X)
MMSCase mms_case(const std::string& name);
const std::vector<std::string>& mms_case_names();

// The analytic fields sampled at time t; ParityMismatch when a velocity
// component does not vanish on its walls.
solver::State mms_state(const MMSCase& c, const fields::Grid& g, double t);

// Source of each equation: time derivative plus the spatial operator of the
// continuous system, composed from the solver's own spectral operators.
solver::Sources mms_sources(const MMSCase& c, const fields::Grid& g, double t, const constitutive::PhysParams& p,
                            const constitutive::RegParams& reg);

struct MMSError {
  int nx = 0;
  double dt = 0;
  double rho = 0, u = 0, theta = 0, d = 0;  // relative L2 errors at t_end
  double max() const;
};

// Runs from the exact state at t = 0 with the manufactured sources and
// measures the error against the analytic fields at cfg.t_end.
MMSError mms_error(const MMSCase& c, const fields::Grid& g, const constitutive::PhysParams& p,
                   const constitutive::RegParams& reg, const solver::SolverConfig& cfg);

// Spatial table on the base grid and on one with twice the points per axis
// (at cfg.dt), and temporal table at dt, dt/2, dt/4 on the base grid.
struct MMSStudy {
  std::vector<MMSError> spatial;
  std::vector<MMSError> temporal;
  double spatial_ratio = 0;                // error(N) / error(2N), max over fields
  double spatial_order = 0;                // log2 of the ratio
  std::vector<double> temporal_orders;     // log2 of consecutive error ratios
};
MMSStudy mms_study(const MMSCase& c, const fields::Grid& base, const constitutive::PhysParams& p,
                   const constitutive::RegParams& reg, const solver::SolverConfig& cfg);

}  // namespace nlc::io
