#include "nlc/continuation/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>

#include <json.hpp>

#include "nlc/diagnostics/audits.hpp"
#include "nlc/diagnostics/energy.hpp"
#include "nlc/diagnostics/record.hpp"
#include "nlc/error.hpp"
#include "nlc/fields/operators.hpp"
#include "nlc/solver/coupled.hpp"

namespace nlc::continuation {

using fields::ScalarField;
using solver::State;

const char* study_name(Study s) {
  switch (s) {
    case Study::Galerkin: return "galerkin_refinement";
    case Study::Viscosity: return "viscosity_vanishing";
    case Study::Pressure: return "pressure_vanishing";
    case Study::Custom: return "custom";
  }
  return "custom";
}

void ContinuationPlan::validate(Study study) const {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::ValidationError, m); };
  if (schedule.empty()) fail("continuation schedule must not be empty");
  cfg.validate();
  phys.validate();
  for (const auto& e : schedule) constitutive::RegParams{e.eps, e.delta, beta, e.n}.validate(phys);
  double prev = -1;
  for (double t : snapshot_times) {
    if (!(t > prev) || t <= 0 || t > cfg.t_end) fail("snapshot times must increase within (0, t_end]");
    prev = t;
  }
  const ScheduleEntry& a = schedule.front();
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    const ScheduleEntry& e = schedule[i];
    const ScheduleEntry& p = schedule[i - 1];
    switch (study) {
      case Study::Galerkin:
        if (e.eps != a.eps || e.delta != a.delta) fail("Galerkin refinement needs fixed eps and delta");
        break;
      case Study::Viscosity:
        if (e.n != a.n || e.delta != a.delta) fail("viscosity study needs fixed n and delta");
        if (e.eps > p.eps) fail("eps must be nonincreasing along the schedule");
        break;
      case Study::Pressure:
        if (e.n != a.n || e.eps != a.eps) fail("pressure study needs fixed n and eps");
        if (e.delta > p.delta) fail("delta must be nonincreasing along the schedule");
        break;
      case Study::Custom: break;
    }
  }
  if (study == Study::Galerkin && !(a.delta > 0)) fail("Galerkin refinement needs delta > 0");
  if (study == Study::Viscosity && !(a.delta > 0)) fail("viscosity study needs delta > 0");
}

namespace {

class FamilyObserver : public solver::StepObserver {
 public:
  FamilyObserver(RunSummary& out, const constitutive::RegParams& reg, const constitutive::PhysParams& p,
                 std::vector<double> times, diagnostics::DiagnosticsMonitor* csv)
      : out_(out), reg_(reg), p_(p), times_(std::move(times)), csv_(csv) {}

  void on_start(const State& s) override {
    mass0_ = fields::integrate(s.rho);
    out_.energy_initial = diagnostics::total_energy(s, reg_, p_);
    out_.energy_final = out_.energy_initial;
    out_.energy_max_ratio = 1.0;
    out_.energy_defect_max = -std::numeric_limits<double>::infinity();
    out_.rho_min = s.rho.min();
    out_.theta_min = s.theta.min();
    out_.director_sup = diagnostics::director_sup(s);
    if (csv_) csv_->on_start(s);
  }

  void on_step(const State& prev, const State& next, const solver::StepInfo& info) override {
    const double dt = next.t - prev.t;
    const double e = diagnostics::total_energy(next, reg_, p_);
    out_.energy_final = e;
    if (out_.energy_initial > 0) out_.energy_max_ratio = std::max(out_.energy_max_ratio, e / out_.energy_initial);
    out_.energy_defect_max =
        std::max(out_.energy_defect_max, diagnostics::energy_budget_residual(prev, next, reg_, p_, dt));
    if (mass0_ > 0) out_.mass_drift = std::max(out_.mass_drift, std::abs(fields::integrate(next.rho) - mass0_) / mass0_);
    out_.rho_min = std::min(out_.rho_min, next.rho.min());
    out_.theta_min = std::min(out_.theta_min, next.theta.min());
    out_.director_sup = std::max(out_.director_sup, diagnostics::director_sup(next));

    const auto g = fields::gradient(next.rho);
    grad_rho_ += dt * fields::inner(g, g);
    const double a1 = p_.alpha + 1.0;
    theta_pow_ += dt * fields::integrate(next.theta.map([a1](double v) { return std::pow(v, a1); }));
    const double beta = reg_.beta;
    rho_beta_ += dt * fields::integrate(next.rho.map([beta](double v) { return std::pow(v, beta); }));
    out_.pressure_weight += dt * diagnostics::pressure_weight_density(next, reg_, p_);

    for (double ts : times_)
      if (std::abs(next.t - ts) <= 1e-12 * std::max(1.0, ts)) out_.snapshots.push_back(next);
    if (csv_) csv_->on_step(prev, next, info);
  }

  void finish() {
    if (out_.energy_defect_max == -std::numeric_limits<double>::infinity()) out_.energy_defect_max = 0;
    out_.eps_grad_rho = reg_.eps * grad_rho_;
    out_.eps_lap_rho = reg_.eps * std::sqrt(grad_rho_);
    out_.delta_theta = reg_.delta * theta_pow_;
    out_.delta_rho_beta = reg_.delta * rho_beta_;
    out_.theta_norm = std::pow(theta_pow_, 1.0 / (p_.alpha + 1.0));
  }

 private:
  RunSummary& out_;
  constitutive::RegParams reg_;
  constitutive::PhysParams p_;
  std::vector<double> times_;
  diagnostics::DiagnosticsMonitor* csv_;
  double mass0_ = 0;
  double grad_rho_ = 0, theta_pow_ = 0, rho_beta_ = 0;
};

RunSummary run_one(const ContinuationPlan& plan, std::size_t index) {
  const ScheduleEntry& e = plan.schedule[index];
  solver::Problem pb;
  pb.phys = plan.phys;
  pb.cfg = plan.cfg;
  pb.reg = {e.eps, e.delta, plan.beta, e.n};
  const solver::GalerkinBasis basis(plan.initial.rho.grid(), e.n);
  const State s0 = solver::regularize_initial_data(plan.initial, pb.reg, basis);

  std::vector<double> times = plan.snapshot_times;
  if (times.empty()) times.push_back(plan.cfg.t_end);

  std::unique_ptr<std::ofstream> file;
  std::unique_ptr<diagnostics::DiagnosticsMonitor> mon;
  if (!plan.csv_dir.empty()) {
    char name[32];
    std::snprintf(name, sizeof name, "run_%02zu.csv", index);
    const auto path = std::filesystem::path(plan.csv_dir) / name;
    file = std::make_unique<std::ofstream>(path);
    if (!*file) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    mon = std::make_unique<diagnostics::DiagnosticsMonitor>(pb.reg, pb.phys, pb.cfg.dealias, pb.cfg.t_end, file.get());
  }

  RunSummary out;
  out.params = e;
  FamilyObserver obs(out, pb.reg, pb.phys, times, mon.get());
  const auto res = solver::run(s0, pb, &obs, times);
  obs.finish();
  out.steps = res.steps;
  out.picard_iterations = res.total_picard;
  if (file && !*file) throw Error(ErrorKind::IoError, "write failed in " + plan.csv_dir);
  return out;
}

Distance distance(const State& a, const State& b, std::size_t from, std::size_t to) {
  Distance d;
  d.from = from;
  d.to = to;
  d.t = b.t;
  d.rho_l1 = fields::integrate((a.rho - b.rho).map([](double v) { return std::abs(v); }));
  d.u_l2 = fields::l2_norm(a.u - b.u);
  d.theta_l2 = fields::l2_norm(a.theta - b.theta);
  const auto dd = a.d - b.d;
  double h1 = std::pow(fields::l2_norm(dd), 2);
  for (std::size_t k = 0; k < dd.size(); ++k) h1 += std::pow(fields::l2_norm(fields::gradient(dd[k])), 2);
  d.d_h1 = std::sqrt(h1);
  return d;
}

DecaySeries series(const std::string& parameter, std::vector<double> params, std::vector<double> values) {
  DecaySeries s{parameter, std::move(params), std::move(values), {}};
  for (std::size_t i = 0; i + 1 < s.values.size(); ++i) {
    const double v0 = s.values[i], v1 = s.values[i + 1], p0 = s.params[i], p1 = s.params[i + 1];
    if (v0 > 0 && v1 > 0 && p0 > 0 && p1 > 0 && p0 != p1)
      s.rates.push_back(std::log(v0 / v1) / std::abs(std::log(p0 / p1)));
  }
  return s;
}

double param_of(const ScheduleEntry& e, Study study) {
  switch (study) {
    case Study::Galerkin: return e.n;
    case Study::Viscosity: return e.eps;
    case Study::Pressure: return e.delta;
    case Study::Custom: break;
  }
  return 0;
}

ContinuationReport assemble(std::vector<RunSummary> runs, Study study, double gamma) {
  ContinuationReport r;
  r.study = study;
  auto sup = [&](const char* key, auto get) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& s : runs) m = std::max(m, get(s));
    r.uniform_bounds[key] = m;
  };
  sup("energy_max_ratio", [](const RunSummary& s) { return s.energy_max_ratio; });
  sup("energy_defect_max", [](const RunSummary& s) { return s.energy_defect_max; });
  sup("mass_drift", [](const RunSummary& s) { return s.mass_drift; });
  sup("director_sup", [](const RunSummary& s) { return s.director_sup; });
  sup("eps_grad_rho", [](const RunSummary& s) { return s.eps_grad_rho; });
  sup("pressure_weight", [](const RunSummary& s) { return s.pressure_weight; });
  sup("theta_norm", [](const RunSummary& s) { return s.theta_norm; });
  sup("delta_theta", [](const RunSummary& s) { return s.delta_theta; });
  sup("delta_rho_beta", [](const RunSummary& s) { return s.delta_rho_beta; });

  for (std::size_t i = 0; i + 1 < runs.size(); ++i)
    for (std::size_t k = 0; k < runs[i].snapshots.size(); ++k)
      r.distances.push_back(distance(runs[i].snapshots[k], runs[i + 1].snapshots[k], i, i + 1));

  std::vector<double> params, pair_params;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    params.push_back(param_of(runs[i].params, study));
    if (i > 0) pair_params.push_back(params.back());
  }
  auto per_run = [&](auto get) {
    std::vector<double> v;
    for (const auto& s : runs) v.push_back(get(s));
    return v;
  };
  // Consecutive-pair quantity at the final snapshot time.
  auto final_pairs = [&](auto get) {
    std::vector<double> v;
    for (const auto& d : r.distances)
      if (d.t == runs[d.to].snapshots.back().t) v.push_back(get(d));
    return v;
  };

  switch (study) {
    case Study::Galerkin:
      r.decay["u_distance"] = series("n", pair_params, final_pairs([](const Distance& d) { return d.u_l2; }));
      r.decay["rho_distance"] = series("n", pair_params, final_pairs([](const Distance& d) { return d.rho_l1; }));
      break;
    case Study::Viscosity:
      r.decay["eps_lap_rho"] = series("eps", params, per_run([](const RunSummary& s) { return s.eps_lap_rho; }));
      r.decay["eps_grad_rho"] = series("eps", params, per_run([](const RunSummary& s) { return s.eps_grad_rho; }));
      break;
    case Study::Pressure: {
      r.decay["delta_rho_beta"] =
          series("delta", params, per_run([](const RunSummary& s) { return s.delta_rho_beta; }));
      r.decay["delta_theta"] = series("delta", params, per_run([](const RunSummary& s) { return s.delta_theta; }));
      std::vector<double> osc;
      for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
        std::vector<ScalarField> a, b;
        std::vector<double> w;
        double t_prev = 0;
        for (std::size_t k = 0; k < runs[i].snapshots.size(); ++k) {
          a.push_back(runs[i + 1].snapshots[k].rho);
          b.push_back(runs[i].snapshots[k].rho);
          w.push_back(runs[i].snapshots[k].t - t_prev);
          t_prev = runs[i].snapshots[k].t;
        }
        osc.push_back(diagnostics::oscillation_defect(a, b, gamma, w));
      }
      r.decay["oscillation_defect"] = series("delta", pair_params, osc);
      break;
    }
    case Study::Custom: break;
  }
  r.runs = std::move(runs);
  return r;
}

void check_matched(const std::vector<RunSummary>& runs) {
  for (std::size_t i = 1; i < runs.size(); ++i) {
    const auto& a = runs[0].snapshots;
    const auto& b = runs[i].snapshots;
    if (a.size() != b.size()) throw Error(ErrorKind::MismatchedSnapshots, "runs store different snapshot counts");
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (std::abs(a[k].t - b[k].t) > 1e-12 * std::max(1.0, std::abs(a[k].t)))
        throw Error(ErrorKind::MismatchedSnapshots, "snapshot times differ between runs");
      fields::require_same_grid(a[k].grid(), b[k].grid(), "convergence_report");
    }
  }
}

}  // namespace

std::vector<RunSummary> run_family(const ContinuationPlan& plan) {
  plan.validate(Study::Custom);
  std::vector<RunSummary> runs;
  for (std::size_t i = 0; i < plan.schedule.size(); ++i) runs.push_back(run_one(plan, i));
  return runs;
}

ContinuationReport run_study(const ContinuationPlan& plan, Study study) {
  plan.validate(study);
  auto runs = run_family(plan);
  check_matched(runs);
  return assemble(std::move(runs), study, plan.phys.gamma);
}

ContinuationReport run_galerkin_refinement(const ContinuationPlan& plan) { return run_study(plan, Study::Galerkin); }
ContinuationReport run_viscosity_vanishing(const ContinuationPlan& plan) { return run_study(plan, Study::Viscosity); }
ContinuationReport run_pressure_vanishing(const ContinuationPlan& plan) { return run_study(plan, Study::Pressure); }

ContinuationReport convergence_report(const std::vector<RunSummary>& runs, Study study, double gamma) {
  if (runs.size() < 2) throw Error(ErrorKind::MismatchedSnapshots, "convergence report needs at least two runs");
  if (runs[0].snapshots.empty()) throw Error(ErrorKind::MismatchedSnapshots, "runs carry no snapshots");
  check_matched(runs);
  return assemble(runs, study, gamma);
}

void write_report_json(std::ostream& os, const ContinuationReport& r) {
  using nlohmann::json;
  json doc;
  doc["study"] = study_name(r.study);
  doc["runs"] = json::array();
  for (const auto& s : r.runs) {
    doc["runs"].push_back({{"n", s.params.n},
                           {"eps", s.params.eps},
                           {"delta", s.params.delta},
                           {"steps", s.steps},
                           {"picard_iterations", s.picard_iterations},
                           {"energy_initial", s.energy_initial},
                           {"energy_final", s.energy_final},
                           {"energy_max_ratio", s.energy_max_ratio},
                           {"energy_defect_max", s.energy_defect_max},
                           {"mass_drift", s.mass_drift},
                           {"rho_min", s.rho_min},
                           {"theta_min", s.theta_min},
                           {"director_sup", s.director_sup},
                           {"eps_grad_rho", s.eps_grad_rho},
                           {"eps_lap_rho", s.eps_lap_rho},
                           {"delta_theta", s.delta_theta},
                           {"delta_rho_beta", s.delta_rho_beta},
                           {"theta_norm", s.theta_norm},
                           {"pressure_weight", s.pressure_weight}});
  }
  doc["uniform_bounds"] = r.uniform_bounds;
  doc["decay"] = json::object();
  for (const auto& [k, s] : r.decay)
    doc["decay"][k] = {{"parameter", s.parameter}, {"params", s.params}, {"values", s.values}, {"rates", s.rates}};
  doc["distances"] = json::array();
  for (const auto& d : r.distances)
    doc["distances"].push_back({{"from", d.from},
                                {"to", d.to},
                                {"t", d.t},
                                {"rho_l1", d.rho_l1},
                                {"u_l2", d.u_l2},
                                {"theta_l2", d.theta_l2},
                                {"d_h1", d.d_h1}});
  os << doc.dump(2) << '\n';
}

}  // namespace nlc::continuation
