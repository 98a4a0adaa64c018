#include "nlc/io/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "nlc/error.hpp"
#include "nlc/fields/snapshot.hpp"
#include "nlc/solver/galerkin.hpp"
#include "nlc/solver/initial_data.hpp"

namespace nlc::io {

fields::Grid GridConfig::make() const {
  if (dim == 1) return fields::Grid::line(nx, lx);
  if (dim == 2) return fields::Grid::box(nx, ny, lx, ly);
  throw Error(ErrorKind::ValidationError, "grid.dim must be 1 or 2");
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::ValidationError, what);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Parse failures carry only the reason; the caller adds line and key.
struct BadValue {
  std::string why;
};

double to_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw BadValue{"expected a number, got '" + s + "'"};
  return v;
}

int to_int(const std::string& s) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0' || v < -1000000000L || v > 1000000000L)
    throw BadValue{"expected an integer, got '" + s + "'"};
  return static_cast<int>(v);
}

bool to_bool(const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw BadValue{"expected true or false, got '" + s + "'"};
}

template <class T, class F>
std::vector<T> to_list(const std::string& s, F conv) {
  std::vector<T> out;
  if (trim(s).empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(conv(trim(item)));
  return out;
}

std::string from_double(double v) { return fields::format_double(v); }

template <class T, class F>
std::string from_list(const std::vector<T>& v, F conv) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + conv(v[i]);
  return s;
}

struct Key {
  std::string name;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define NLC_DOUBLE(key, member)                                                   \
  Key {                                                                           \
    key, [](RunConfig& c, const std::string& v) { c.member = to_double(v); },     \
        [](const RunConfig& c) { return from_double(c.member); }                  \
  }
#define NLC_INT(key, member)                                                      \
  Key {                                                                           \
    key, [](RunConfig& c, const std::string& v) { c.member = to_int(v); },        \
        [](const RunConfig& c) { return std::to_string(c.member); }               \
  }
#define NLC_STRING(key, member)                                                   \
  Key {                                                                           \
    key, [](RunConfig& c, const std::string& v) { c.member = v; },                \
        [](const RunConfig& c) { return c.member; }                               \
  }

const std::vector<Key>& keys() {
  static const std::vector<Key> k = {
      NLC_INT("grid.dim", grid.dim),
      NLC_DOUBLE("grid.lx", grid.lx),
      NLC_DOUBLE("grid.ly", grid.ly),
      NLC_INT("grid.nx", grid.nx),
      NLC_INT("grid.ny", grid.ny),
      NLC_DOUBLE("phys.mu", phys.mu),
      NLC_DOUBLE("phys.lambda", phys.lambda),
      NLC_DOUBLE("phys.gamma", phys.gamma),
      NLC_DOUBLE("phys.R", phys.R),
      NLC_DOUBLE("phys.alpha", phys.alpha),
      NLC_DOUBLE("phys.kappa_lo", phys.kappa_lo),
      NLC_DOUBLE("phys.kappa_hi", phys.kappa_hi),
      NLC_DOUBLE("phys.sigma0", phys.sigma0),
      NLC_DOUBLE("phys.nu", phys.nu),
      NLC_DOUBLE("phys.kappa_relax", phys.kappa_relax),
      NLC_DOUBLE("reg.eps", reg.eps),
      NLC_DOUBLE("reg.delta", reg.delta),
      NLC_DOUBLE("reg.beta", reg.beta),
      NLC_INT("reg.n", reg.n),
      NLC_DOUBLE("solver.dt", solver.dt),
      NLC_DOUBLE("solver.t_end", solver.t_end),
      NLC_DOUBLE("solver.picard_tol", solver.picard_tol),
      NLC_INT("solver.picard_max", solver.picard_max),
      Key{"solver.dealias", [](RunConfig& c, const std::string& v) { c.solver.dealias = to_bool(v); },
          [](const RunConfig& c) { return std::string(c.solver.dealias ? "true" : "false"); }},
      NLC_STRING("init.preset", init.preset),
      NLC_STRING("init.snapshot", init.snapshot),
      NLC_DOUBLE("init.theta_min", init.theta_min),
      NLC_DOUBLE("init.theta_max", init.theta_max),
      NLC_STRING("output.dir", output.dir),
      NLC_INT("output.snapshot_every", output.snapshot_every),
      Key{"output.csv", [](RunConfig& c, const std::string& v) { c.output.csv = to_bool(v); },
          [](const RunConfig& c) { return std::string(c.output.csv ? "true" : "false"); }},
      NLC_STRING("continuation.study", continuation.study),
      Key{"continuation.n", [](RunConfig& c, const std::string& v) { c.continuation.n = to_list<int>(v, to_int); },
          [](const RunConfig& c) { return from_list(c.continuation.n, [](int x) { return std::to_string(x); }); }},
      Key{"continuation.eps",
          [](RunConfig& c, const std::string& v) { c.continuation.eps = to_list<double>(v, to_double); },
          [](const RunConfig& c) { return from_list(c.continuation.eps, from_double); }},
      Key{"continuation.delta",
          [](RunConfig& c, const std::string& v) { c.continuation.delta = to_list<double>(v, to_double); },
          [](const RunConfig& c) { return from_list(c.continuation.delta, from_double); }},
      Key{"continuation.snapshot_times",
          [](RunConfig& c, const std::string& v) { c.continuation.snapshot_times = to_list<double>(v, to_double); },
          [](const RunConfig& c) { return from_list(c.continuation.snapshot_times, from_double); }},
  };
  return k;
}

#undef NLC_DOUBLE
#undef NLC_INT
#undef NLC_STRING

}  // namespace

void RunConfig::validate() const {
  require(grid.dim == 1 || grid.dim == 2, "grid.dim must be 1 or 2");
  require(grid.lx > 0 && std::isfinite(grid.lx), "grid.lx must be positive");
  require(grid.dim == 1 || (grid.ly > 0 && std::isfinite(grid.ly)), "grid.ly must be positive");
  require(grid.nx >= 3 && (grid.dim == 1 || grid.ny >= 3), "grids need at least 3 points per axis");
  phys.validate();
  reg.validate(phys);
  solver.validate();
  const fields::Grid g = grid.make();
  for (int a = 0; a < g.dim(); ++a)
    require(reg.n <= g.dealias_cutoff(a), "reg.n must not exceed the dealiasing cutoff " +
                                              std::to_string(g.dealias_cutoff(a)) + " of the grid");
  if (init.snapshot.empty()) {
    const auto& names = solver::preset_names();
    require(std::find(names.begin(), names.end(), init.preset) != names.end(),
            "init.preset '" + init.preset + "' is not a known preset");
  }
  require(init.theta_min >= 0 && init.theta_min <= init.theta_max, "need 0 <= init.theta_min <= init.theta_max");
  require(!output.dir.empty(), "output.dir must not be empty");
  require(output.snapshot_every >= 0, "output.snapshot_every must be nonnegative");

  const auto& k = continuation;
  require(k.study == "galerkin" || k.study == "viscosity" || k.study == "pressure",
          "continuation.study must be galerkin, viscosity or pressure");
  require(!k.n.empty() && !k.eps.empty() && !k.delta.empty(), "continuation lists must not be empty");
  const std::size_t len = std::max({k.n.size(), k.eps.size(), k.delta.size()});
  for (std::size_t s : {k.n.size(), k.eps.size(), k.delta.size()})
    require(s == 1 || s == len, "continuation lists must have length 1 or a common length");
  for (int n : k.n)
    for (int a = 0; a < g.dim(); ++a) require(n >= 1 && n <= g.dealias_cutoff(a), "continuation.n out of range");
  for (double e : k.eps) require(e >= 0 && std::isfinite(e), "continuation.eps must be nonnegative");
  for (double d : k.delta) require(d >= 0 && std::isfinite(d), "continuation.delta must be nonnegative");
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& k : keys()) out.push_back(k.name);
  return out;
}

RunConfig parse_config_text(const std::string& text, std::ostream* log, const std::string& origin) {
  RunConfig c;
  std::map<std::string, const Key*> index;
  for (const auto& k : keys()) index[k.name] = &k;
  std::set<std::string> seen;

  std::stringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = index.find(key);
    if (it == index.end()) throw Error(ErrorKind::ParseError, where + ": unknown key '" + key + "'");
    if (!seen.insert(key).second) throw Error(ErrorKind::ParseError, where + ": key '" + key + "' given twice");
    try {
      it->second->set(c, value);
    } catch (const BadValue& b) {
      throw Error(ErrorKind::ParseError, where + ": " + key + ": " + b.why);
    }
  }
  if (log)
    for (const auto& k : keys())
      if (!seen.count(k.name)) *log << "config: default " << k.name << " = " << k.get(c) << '\n';
  c.validate();
  return c;
}

RunConfig parse_config(const std::string& path, std::ostream* log) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::IoError, "cannot open config " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), log, path);
}

std::string serialize_config(const RunConfig& c) {
  std::string out;
  std::string section;
  for (const auto& k : keys()) {
    const std::string s = k.name.substr(0, k.name.find('.'));
    if (s != section) {
      if (!section.empty()) out += '\n';
      section = s;
    }
    out += k.name + " = " + k.get(c) + '\n';
  }
  return out;
}

}  // namespace nlc::io
