#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "nlc/constitutive/params.hpp"
#include "nlc/solver/initial_data.hpp"
#include "nlc/solver/state.hpp"

namespace nlc::continuation {

struct ScheduleEntry {
  int n = 8;
  double eps = 0.0;
  double delta = 0.0;
};

enum class Study { Galerkin, Viscosity, Pressure, Custom };
const char* study_name(Study s);

struct ContinuationPlan {
  constitutive::PhysParams phys;
  solver::SolverConfig cfg;
  double beta = 5.0;
  solver::InitialData initial;          // raw data shared by every run
  std::vector<ScheduleEntry> schedule;
  std::vector<double> snapshot_times;   // empty: t_end only
  std::string csv_dir;                  // per-run diagnostics CSVs when nonempty

  // Checks the schedule shape required by the study (ValidationError).
  void validate(Study study) const;
};

struct RunSummary {
  ScheduleEntry params;
  int steps = 0;
  int picard_iterations = 0;
  double energy_initial = 0;
  double energy_final = 0;
  double energy_max_ratio = 0;   // max_t E(t) / E(0)
  double energy_defect_max = 0;  // max_t of the signed budget residual
  double mass_drift = 0;         // max_t |M(t) - M(0)| / M(0)
  double rho_min = 0;
  double theta_min = 0;
  double director_sup = 0;
  double eps_grad_rho = 0;       // eps int int |grad rho|^2
  double eps_lap_rho = 0;        // eps (int int |grad rho|^2)^{1/2}, an L2 H^-1 norm of eps lap rho
  double delta_theta = 0;        // delta int int theta^{alpha+1}
  double delta_rho_beta = 0;     // delta int int rho^beta
  double theta_norm = 0;         // (int int theta^{alpha+1})^{1/(alpha+1)}
  double pressure_weight = 0;
  std::vector<solver::State> snapshots;  // at the plan's snapshot times
};

struct Distance {
  std::size_t from = 0, to = 0;  // run indices
  double t = 0;
  double rho_l1 = 0;
  double u_l2 = 0;
  double theta_l2 = 0;
  double d_h1 = 0;  // L2 of the difference and of its gradient
};

struct DecaySeries {
  std::string parameter;        // n, eps or delta
  std::vector<double> params;
  std::vector<double> values;
  // Observed exponent log(v_i / v_{i+1}) / |log(p_i / p_{i+1})|, only where defined.
  std::vector<double> rates;
};

struct ContinuationReport {
  Study study = Study::Custom;
  std::vector<RunSummary> runs;
  std::map<std::string, double> uniform_bounds;  // sup over runs
  std::map<std::string, DecaySeries> decay;
  std::vector<Distance> distances;  // consecutive runs at each snapshot time
};

// Plain runs of every schedule entry, in order.
std::vector<RunSummary> run_family(const ContinuationPlan& plan);

ContinuationReport run_galerkin_refinement(const ContinuationPlan& plan);
ContinuationReport run_viscosity_vanishing(const ContinuationPlan& plan);
ContinuationReport run_pressure_vanishing(const ContinuationPlan& plan);
ContinuationReport run_study(const ContinuationPlan& plan, Study study);

// Needs at least two runs with matched snapshot times (MismatchedSnapshots).
ContinuationReport convergence_report(const std::vector<RunSummary>& runs, Study study = Study::Custom,
                                      double gamma = 2.0);

// JSON document with runs[], uniform_bounds{}, decay{}, distances[].
void write_report_json(std::ostream& os, const ContinuationReport& r);

}  // namespace nlc::continuation
