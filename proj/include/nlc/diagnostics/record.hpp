#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "nlc/constitutive/params.hpp"
#include "nlc/diagnostics/energy.hpp"
#include "nlc/diagnostics/residuals.hpp"
#include "nlc/solver/coupled.hpp"

namespace nlc::diagnostics {

// Residual columns, in CSV order.
const std::vector<std::string>& residual_ids();

struct DiagRecord {
  double t = 0;
  double mass = 0;
  EnergyParts energy;
  DissipationParts dissipation;
  double entropy_total = 0;
  double entropy_production_min = 0;
  double director_sup = 0;
  double pressure_weight_increment = 0;
  // One entry per residual id; NaN on the initial record.
  std::vector<double> residuals;

  double energy_total() const { return energy.total(); }
  double residual(const std::string& id) const;
};

// Per-test-function step residuals keyed by residual id (energy_defect has one entry).
std::map<std::string, std::vector<double>> step_residuals(const solver::State& prev, const solver::State& next,
                                                          const constitutive::RegParams& reg,
                                                          const constitutive::PhysParams& p, bool dealias,
                                                          const TestBattery& tb);

// Record of a state; with `prev`, also the step residuals and increments.
DiagRecord make_record(const solver::State* prev, const solver::State& next, const constitutive::RegParams& reg,
                       const constitutive::PhysParams& p, bool dealias, const TestBattery& tb);

// CSV: a version comment, a header row, one row per record at 17 digits.
std::vector<std::string> csv_columns();
void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const DiagRecord& r);
std::vector<double> csv_values(const DiagRecord& r);
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv(std::istream& is);

// Collects records during a run and time-integrated residuals with the
// profiles psi in {1, sin^2(pi t / T)}.
class DiagnosticsMonitor : public solver::StepObserver {
 public:
  DiagnosticsMonitor(const constitutive::RegParams& reg, const constitutive::PhysParams& p, bool dealias,
                     double horizon, std::ostream* csv = nullptr);

  void on_start(const solver::State& s) override;
  void on_step(const solver::State& prev, const solver::State& next, const solver::StepInfo& info) override;

  const std::vector<DiagRecord>& records() const { return records_; }
  // max over test functions and profiles of |sum dt psi(t) R(phi)|.
  std::map<std::string, double> integrated_residuals() const;
  double pressure_weight() const { return pressure_weight_; }
  double initial_director_sup() const { return d0_sup_; }

 private:
  constitutive::RegParams reg_;
  constitutive::PhysParams p_;
  bool dealias_;
  double horizon_;
  std::ostream* csv_;
  TestBattery tb_;
  bool have_battery_ = false;
  std::vector<DiagRecord> records_;
  // integrated_[id][profile][test]
  std::map<std::string, std::vector<std::vector<double>>> integrated_;
  double pressure_weight_ = 0;
  double d0_sup_ = 0;
};

double director_sup(const solver::State& s);

}  // namespace nlc::diagnostics
