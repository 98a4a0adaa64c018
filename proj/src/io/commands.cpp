#include "nlc/io/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "nlc/continuation/continuation.hpp"
#include "nlc/diagnostics/record.hpp"
#include "nlc/fields/operators.hpp"
#include "nlc/fields/snapshot.hpp"
#include "nlc/io/mms.hpp"
#include "nlc/solver/coupled.hpp"
#include "nlc/solver/initial_data.hpp"

namespace nlc::io {

namespace fs = std::filesystem;
using solver::State;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError:
    case ErrorKind::InvalidInitialData:
    case ErrorKind::ParityMismatch:
    case ErrorKind::GridMismatch:
      return kExitConfig;
    case ErrorKind::IoError:
    case ErrorKind::MismatchedSnapshots:
      return kExitIo;
    default:
      return kExitSolver;
  }
}

std::string output_dir(const RunConfig& c) {
  const char* env = std::getenv("SOLVE_OUT");
  return env && *env ? std::string(env) : c.output.dir;
}

namespace {

void make_dir(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + p.string() + ": " + ec.message());
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw Error(ErrorKind::IoError, "cannot write " + p.string());
  return f;
}

void close_out(std::ofstream& f, const fs::path& p) {
  f.close();
  if (!f) throw Error(ErrorKind::IoError, "write failed for " + p.string());
}

void write_text(const fs::path& p, const std::string& text) {
  auto f = open_out(p);
  f << text;
  close_out(f, p);
}

State read_state_file(const fs::path& p) {
  std::ifstream f(p);
  if (!f) throw Error(ErrorKind::IoError, "cannot open snapshot " + p.string());
  try {
    return solver::read_state(f);
  } catch (const Error& e) {
    // Drop the kind prefix of the inner message; any failure here is an I/O error.
    const std::string what = e.what();
    const auto colon = what.find(": ");
    throw Error(ErrorKind::IoError, p.string() + ": " + (colon == std::string::npos ? what : what.substr(colon + 2)));
  }
}

solver::InitialData raw_initial(const RunConfig& c, const fields::Grid& g) {
  if (c.init.snapshot.empty()) return solver::preset(c.init.preset, g);
  const State s = read_state_file(c.init.snapshot);
  if (s.grid() != g) throw Error(ErrorKind::ValidationError, "init.snapshot grid differs from the configured grid");
  solver::InitialData raw{s.rho, s.u, s.theta, s.d};
  for (std::size_t k = 0; k < raw.m.size(); ++k) raw.m[k] = s.rho * s.u[k];
  return raw;
}

class Fanout : public solver::StepObserver {
 public:
  explicit Fanout(std::vector<solver::StepObserver*> obs) : obs_(std::move(obs)) {}
  void on_start(const State& s) override {
    for (auto* o : obs_) o->on_start(s);
  }
  void on_step(const State& prev, const State& next, const solver::StepInfo& info) override {
    for (auto* o : obs_) o->on_step(prev, next, info);
  }

 private:
  std::vector<solver::StepObserver*> obs_;
};

class SnapshotWriter : public solver::StepObserver {
 public:
  SnapshotWriter(fs::path dir, int every) : dir_(std::move(dir)), every_(every) {}

  void on_start(const State& s) override { write(s); }
  void on_step(const State&, const State& next, const solver::StepInfo&) override {
    ++step_;
    if (every_ > 0 && step_ % every_ == 0) write(next);
  }
  void finish(const State& last) {
    if (written_ != step_) write(last);
  }

 private:
  void write(const State& s) {
    char name[32];
    std::snprintf(name, sizeof name, "snap_%06d.txt", step_);
    const fs::path p = dir_ / name;
    auto f = open_out(p);
    solver::write_state(f, s);
    close_out(f, p);
    written_ = step_;
  }

  fs::path dir_;
  int every_;
  int step_ = 0;
  int written_ = -1;
};

template <class F>
int guarded(std::ostream& err, F body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error: IoError: " << e.what() << '\n';
    return kExitIo;
  }
}

solver::SolverConfig checked(const solver::SolverConfig& c) {
  c.validate();
  return c;
}

}  // namespace

int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig c = parse_config(config_path, &err);
    const fs::path dir = output_dir(c);
    make_dir(dir / "snapshots");
    write_text(dir / "config.txt", serialize_config(c));

    const fields::Grid g = c.grid.make();
    solver::Problem pb;
    pb.phys = c.phys;
    pb.reg = c.reg;
    pb.cfg = checked(c.solver);
    const solver::GalerkinBasis basis(g, c.reg.n);
    const State s0 =
        solver::regularize_initial_data(raw_initial(c, g), c.reg, basis, {c.init.theta_min, c.init.theta_max});

    std::ofstream csv;
    if (c.output.csv) csv = open_out(dir / "diag.csv");
    diagnostics::DiagnosticsMonitor mon(c.reg, c.phys, c.solver.dealias, c.solver.t_end,
                                        c.output.csv ? &csv : nullptr);
    SnapshotWriter snaps(dir / "snapshots", c.output.snapshot_every);
    Fanout fan({&mon, &snaps});
    const auto res = solver::run(s0, pb, &fan);
    snaps.finish(res.final_state);
    if (c.output.csv) close_out(csv, dir / "diag.csv");

    const auto& first = mon.records().front();
    const auto& last = mon.records().back();
    out << "steps " << res.steps << ", picard iterations " << res.total_picard << ", t = "
        << fields::format_double(res.final_state.t) << '\n';
    out << "energy " << fields::format_double(first.energy_total()) << " -> "
        << fields::format_double(last.energy_total()) << ", mass drift "
        << fields::format_double(std::abs(last.mass - first.mass) / std::max(first.mass, 1e-300)) << '\n';
    out << "output " << dir.string() << '\n';
    return kExitOk;
  });
}

int cmd_continuation(const std::string& config_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig c = parse_config(config_path, &err);
    const fs::path dir = output_dir(c);
    make_dir(dir);
    write_text(dir / "config.txt", serialize_config(c));

    const fields::Grid g = c.grid.make();
    continuation::ContinuationPlan plan;
    plan.phys = c.phys;
    plan.cfg = checked(c.solver);
    plan.beta = c.reg.beta;
    plan.initial = raw_initial(c, g);
    plan.snapshot_times = c.continuation.snapshot_times;
    if (c.output.csv) plan.csv_dir = dir.string();
    const auto& k = c.continuation;
    const std::size_t len = std::max({k.n.size(), k.eps.size(), k.delta.size()});
    auto at = [](const auto& v, std::size_t i) { return v.size() == 1 ? v[0] : v[i]; };
    for (std::size_t i = 0; i < len; ++i) plan.schedule.push_back({at(k.n, i), at(k.eps, i), at(k.delta, i)});

    const auto study = k.study == "galerkin"    ? continuation::Study::Galerkin
                       : k.study == "viscosity" ? continuation::Study::Viscosity
                                                : continuation::Study::Pressure;
    const auto report = continuation::run_study(plan, study);
    const fs::path json = dir / "report.json";
    auto f = open_out(json);
    continuation::write_report_json(f, report);
    close_out(f, json);

    out << continuation::study_name(study) << ": " << report.runs.size() << " runs\n";
    char line[160];
    for (const auto& r : report.runs) {
      std::snprintf(line, sizeof line, "  n %d eps %g delta %g: steps %d, E/E0 max %.12g\n", r.params.n, r.params.eps,
                    r.params.delta, r.steps, r.energy_max_ratio);
      out << line;
    }
    out << "output " << dir.string() << '\n';
    return kExitOk;
  });
}

int cmd_mms(const std::string& case_name, const std::string& config_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig c = parse_config(config_path, &err);
    const MMSCase mc = mms_case(case_name);
    const fs::path dir = output_dir(c);
    make_dir(dir);
    write_text(dir / "config.txt", serialize_config(c));

    const MMSStudy st = mms_study(mc, c.grid.make(), c.phys, c.reg, checked(c.solver));
    using nlohmann::json;
    auto row = [](const MMSError& e) {
      return json{{"nx", e.nx}, {"dt", e.dt}, {"rho", e.rho}, {"u", e.u}, {"theta", e.theta}, {"d", e.d},
                  {"max", e.max()}};
    };
    json doc{{"case", mc.name}, {"spatial", json::array()}, {"temporal", json::array()},
             {"spatial_ratio", st.spatial_ratio}, {"spatial_order", st.spatial_order},
             {"temporal_orders", st.temporal_orders}};
    for (const auto& e : st.spatial) doc["spatial"].push_back(row(e));
    for (const auto& e : st.temporal) doc["temporal"].push_back(row(e));
    write_text(dir / "mms.json", doc.dump(2) + "\n");

    char line[160];
    out << "case " << mc.name << "\n";
    out << "  nx        dt          rho         u           theta       d\n";
    for (const auto* tab : {&st.spatial, &st.temporal})
      for (const auto& e : *tab) {
        std::snprintf(line, sizeof line, "  %-8d  %-10.4g  %-10.4e  %-10.4e  %-10.4e  %-10.4e\n", e.nx, e.dt, e.rho,
                      e.u, e.theta, e.d);
        out << line;
      }
    std::snprintf(line, sizeof line, "spatial ratio %.4g (order %.3g per doubling)\n", st.spatial_ratio,
                  st.spatial_order);
    out << line;
    out << "temporal orders";
    for (double o : st.temporal_orders) {
      std::snprintf(line, sizeof line, " %.3f", o);
      out << line;
    }
    out << '\n';
    return kExitOk;
  });
}

int cmd_diagnose(const std::string& dir_arg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const fs::path dir(dir_arg);
    if (!fs::is_directory(dir)) throw Error(ErrorKind::IoError, "no such directory " + dir.string());
    RunConfig c;
    if (fs::exists(dir / "config.txt")) c = parse_config((dir / "config.txt").string(), &err);
    else err << "config: " << (dir / "config.txt").string() << " missing, using defaults\n";

    std::vector<fs::path> files;
    if (fs::is_directory(dir / "snapshots"))
      for (const auto& e : fs::directory_iterator(dir / "snapshots"))
        if (e.path().extension() == ".txt" && e.path().filename().string().rfind("snap_", 0) == 0)
          files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error(ErrorKind::IoError, "no snapshots under " + (dir / "snapshots").string());

    std::vector<State> states;
    for (const auto& p : files) {
      states.push_back(read_state_file(p));
      states.back().validate();
      if (states.size() > 1 && !(states.back().t > states[states.size() - 2].t))
        throw Error(ErrorKind::IoError, p.string() + ": snapshot times must increase");
    }

    const char* env = std::getenv("SOLVE_OUT");
    const fs::path out_dir = env && *env ? fs::path(env) : dir;
    make_dir(out_dir);
    const fs::path csv_path = out_dir / "diag_replay.csv";
    auto csv = open_out(csv_path);
    diagnostics::write_csv_header(csv);
    const auto tb = diagnostics::test_battery(states.front().grid());
    double worst_defect = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto r = diagnostics::make_record(i ? &states[i - 1] : nullptr, states[i], c.reg, c.phys,
                                              c.solver.dealias, tb);
      if (i) worst_defect = std::max(worst_defect, r.residual("energy_defect"));
      diagnostics::write_csv_row(csv, r);
    }
    close_out(csv, csv_path);
    out << "replayed " << states.size() << " snapshots from " << dir.string() << '\n';
    if (states.size() > 1) out << "largest energy defect " << fields::format_double(worst_defect) << '\n';
    out << "output " << csv_path.string() << '\n';
    return kExitOk;
  });
}

}  // namespace nlc::io
