#pragma once

#include <vector>

#include "nlc/constitutive/params.hpp"
#include "nlc/solver/galerkin.hpp"
#include "nlc/solver/state.hpp"
#include "nlc/solver/steps.hpp"

namespace nlc::solver {

struct StepInfo {
  double dt = 0.0;         // accepted step size
  int picard_iterations = 0;
  int halvings = 0;        // step-size halvings before acceptance
  double picard_change = 0.0;
};

struct StepResult {
  State next;
  StepInfo info;
};

struct Problem {
  constitutive::PhysParams phys;
  constitutive::RegParams reg;
  SolverConfig cfg;
  SourceFn sources;  // optional
};

// One step of size dt: density, director, temperature and momentum inside a
// Picard loop on the advecting velocity. No step-size control.
StepResult step_fixed(const State& s, const Problem& pb, const GalerkinBasis& basis, double dt);

// step_fixed with up to ten halvings of dt after a positivity failure.
StepResult step_coupled(const State& s, const Problem& pb, const GalerkinBasis& basis, double dt);

class StepObserver {
 public:
  virtual ~StepObserver() = default;
  virtual void on_start(const State&) {}
  virtual void on_step(const State& prev, const State& next, const StepInfo& info) {}
};

struct RunResult {
  State final_state;
  int steps = 0;
  int total_picard = 0;
};

// Integrates to cfg.t_end. Steps are shortened so that every time in
// `stops` and t_end itself is hit exactly.
RunResult run(const State& s0, const Problem& pb, StepObserver* obs = nullptr, std::vector<double> stops = {});

}  // namespace nlc::solver
