#include "nlc/diagnostics/record.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "nlc/diagnostics/audits.hpp"
#include "nlc/error.hpp"
#include "nlc/fields/operators.hpp"
#include "nlc/fields/snapshot.hpp"

namespace nlc::diagnostics {

using solver::State;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

const std::vector<std::string>& residual_ids() {
  static const std::vector<std::string> ids = {"energy_defect", "renorm_identity", "renorm_T1",      "renorm_T2",
                                               "renorm_T4",     "renorm_zlogz",    "momentum_weak", "thermal_defect",
                                               "director_weak"};
  return ids;
}

double DiagRecord::residual(const std::string& id) const {
  const auto& ids = residual_ids();
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == id) return i < residuals.size() ? residuals[i] : kNaN;
  throw Error(ErrorKind::ValidationError, "unknown residual id " + id);
}

double director_sup(const State& s) { return std::sqrt(fields::dot(s.d, s.d).max()); }

std::map<std::string, std::vector<double>> step_residuals(const State& prev, const State& next,
                                                          const constitutive::RegParams& reg,
                                                          const constitutive::PhysParams& p, bool dealias,
                                                          const TestBattery& tb) {
  const double dt = next.t - prev.t;
  std::map<std::string, std::vector<double>> r;
  r["energy_defect"] = {energy_budget_residual(prev, next, reg, p, dt)};
  for (Renorm b : all_renorms()) r["renorm_" + renorm_id(b)] = renorm_residuals(prev, next, b, reg.eps, dt, tb);
  r["momentum_weak"] = momentum_residuals(prev, next, reg, p, dt, tb);
  r["thermal_defect"] = thermal_defects(prev, next, reg, p, dt, tb, dealias);
  r["director_weak"] = director_residuals(prev, next, p, dt, tb);
  return r;
}

namespace {

DiagRecord assemble(const State* prev, const State& next, const constitutive::RegParams& reg,
                    const constitutive::PhysParams& p, const std::map<std::string, std::vector<double>>* sr) {
  DiagRecord r;
  r.t = next.t;
  r.mass = fields::integrate(next.rho);
  r.energy = energy_parts(next, reg, p);
  r.dissipation = dissipation_parts(next, reg, p);
  try {
    r.entropy_total = entropy_total(next);
    r.entropy_production_min = entropy_production(next, p).pointwise_min;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NonPositiveTemperature) throw;
    r.entropy_total = kNaN;
    r.entropy_production_min = kNaN;
  }
  r.director_sup = director_sup(next);
  r.residuals.assign(residual_ids().size(), kNaN);
  if (prev) {
    r.pressure_weight_increment = (next.t - prev->t) * pressure_weight_density(next, reg, p);
    const auto& ids = residual_ids();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto& v = sr->at(ids[i]);
      // Signed columns keep their direction; the others report the largest magnitude.
      if (ids[i] == "energy_defect") r.residuals[i] = v.front();
      else if (ids[i] == "thermal_defect") r.residuals[i] = max_value(v);
      else r.residuals[i] = max_abs(v);
    }
  }
  return r;
}

}  // namespace

DiagRecord make_record(const State* prev, const State& next, const constitutive::RegParams& reg,
                       const constitutive::PhysParams& p, bool dealias, const TestBattery& tb) {
  if (!prev) return assemble(nullptr, next, reg, p, nullptr);
  const auto sr = step_residuals(*prev, next, reg, p, dealias, tb);
  return assemble(prev, next, reg, p, &sr);
}

std::vector<std::string> csv_columns() {
  std::vector<std::string> c = {"t",
                                "mass",
                                "energy_total",
                                "energy_kinetic",
                                "energy_elastic",
                                "energy_artificial",
                                "energy_frank",
                                "energy_penalty",
                                "energy_thermal",
                                "diss_viscous",
                                "diss_director",
                                "diss_sink",
                                "diss_eps_density",
                                "entropy_total",
                                "entropy_production_min",
                                "director_sup",
                                "pressure_weight_increment"};
  for (const auto& id : residual_ids()) c.push_back(id);
  return c;
}

std::vector<double> csv_values(const DiagRecord& r) {
  std::vector<double> v = {r.t,
                           r.mass,
                           r.energy_total(),
                           r.energy.kinetic,
                           r.energy.elastic,
                           r.energy.artificial,
                           r.energy.frank,
                           r.energy.penalty,
                           r.energy.thermal,
                           r.dissipation.viscous,
                           r.dissipation.director,
                           r.dissipation.sink,
                           r.dissipation.eps_density,
                           r.entropy_total,
                           r.entropy_production_min,
                           r.director_sup,
                           r.pressure_weight_increment};
  v.insert(v.end(), r.residuals.begin(), r.residuals.end());
  return v;
}

void write_csv_header(std::ostream& os) {
  os << "# " << kBatteryVersion << '\n';
  const auto c = csv_columns();
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << '\n';
}

void write_csv_row(std::ostream& os, const DiagRecord& r) {
  const auto v = csv_values(r);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << fields::format_double(v[i]);
  os << '\n';
}

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  bool header = false;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!header) {
      t.columns = cells;
      header = true;
      continue;
    }
    if (cells.size() != t.columns.size())
      throw Error(ErrorKind::IoError, "CSV line " + std::to_string(lineno) + " has the wrong number of cells");
    std::vector<double> row;
    for (const auto& c : cells) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (end == c.c_str() || *end != '\0')
        throw Error(ErrorKind::IoError, "CSV line " + std::to_string(lineno) + ": bad number '" + c + "'");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (!header) throw Error(ErrorKind::IoError, "CSV has no header");
  return t;
}

// ---------------------------------------------------------------------------

DiagnosticsMonitor::DiagnosticsMonitor(const constitutive::RegParams& reg, const constitutive::PhysParams& p,
                                       bool dealias, double horizon, std::ostream* csv)
    : reg_(reg), p_(p), dealias_(dealias), horizon_(horizon), csv_(csv) {}

void DiagnosticsMonitor::on_start(const State& s) {
  if (!have_battery_) {
    tb_ = test_battery(s.grid());
    have_battery_ = true;
  }
  d0_sup_ = director_sup(s);
  records_.push_back(make_record(nullptr, s, reg_, p_, dealias_, tb_));
  if (csv_) {
    write_csv_header(*csv_);
    write_csv_row(*csv_, records_.back());
  }
}

void DiagnosticsMonitor::on_step(const State& prev, const State& next, const solver::StepInfo&) {
  if (!have_battery_) on_start(prev);
  const double dt = next.t - prev.t;
  const auto sr = step_residuals(prev, next, reg_, p_, dealias_, tb_);
  DiagRecord r = assemble(&prev, next, reg_, p_, &sr);
  pressure_weight_ += r.pressure_weight_increment;

  const double psi[2] = {1.0, horizon_ > 0 ? std::pow(std::sin(std::numbers::pi * next.t / horizon_), 2) : 1.0};
  for (const auto& [id, v] : sr) {
    auto& acc = integrated_[id];
    if (acc.empty()) acc.assign(2, std::vector<double>(v.size(), 0.0));
    for (int k = 0; k < 2; ++k)
      for (std::size_t i = 0; i < v.size(); ++i) acc[k][i] += dt * psi[k] * v[i];
  }
  records_.push_back(std::move(r));
  if (csv_) write_csv_row(*csv_, records_.back());
}

std::map<std::string, double> DiagnosticsMonitor::integrated_residuals() const {
  std::map<std::string, double> out;
  for (const auto& [id, acc] : integrated_) {
    double m = 0;
    for (const auto& prof : acc) m = std::max(m, max_abs(prof));
    out[id] = m;
  }
  return out;
}

}  // namespace nlc::diagnostics
