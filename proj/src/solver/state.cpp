#include "nlc/solver/state.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "nlc/error.hpp"
#include "nlc/fields/snapshot.hpp"

namespace nlc::solver {

using fields::Grid;
using fields::Parity;

void State::validate() const {
  const Grid& g = grid();
  auto same = [&](const fields::ScalarField& f) { fields::require_same_grid(g, f.grid(), "State"); };
  same(theta);
  if (static_cast<int>(u.size()) != g.dim()) throw Error(ErrorKind::ValidationError, "velocity needs dim components");
  if (d.size() != 3) throw Error(ErrorKind::ValidationError, "director needs 3 components");
  for (int c = 0; c < g.dim(); ++c) {
    same(u[c]);
    if (u[c].parity() != Parity::velocity(c)) throw Error(ErrorKind::ParityMismatch, "velocity component parity");
  }
  for (const auto& c : d.comp) {
    same(c);
    if (c.parity() != Parity::neumann()) throw Error(ErrorKind::ParityMismatch, "director component parity");
  }
  if (rho.parity() != Parity::neumann() || theta.parity() != Parity::neumann())
    throw Error(ErrorKind::ParityMismatch, "density and temperature must be cosine fields");
  auto finite = [](const fields::ScalarField& f) {
    for (double v : f.values())
      if (!std::isfinite(v)) return false;
    return true;
  };
  bool ok = finite(rho) && finite(theta);
  for (const auto& c : u.comp) ok = ok && finite(c);
  for (const auto& c : d.comp) ok = ok && finite(c);
  if (!ok) throw Error(ErrorKind::ValidationError, "state holds non-finite values");
  if (rho.min() < 0.0) throw Error(ErrorKind::ValidationError, "negative density");
  if (theta.min() < 0.0) throw Error(ErrorKind::ValidationError, "negative temperature");
}

void SolverConfig::validate() const {
  if (!(dt > 0.0)) throw Error(ErrorKind::ValidationError, "Δt must be positive");
  if (!(t_end >= 0.0)) throw Error(ErrorKind::ValidationError, "T_end must be nonnegative");
  if (!(picard_tol > 0.0)) throw Error(ErrorKind::ValidationError, "picard_tol must be positive");
  if (picard_max < 1) throw Error(ErrorKind::ValidationError, "picard_max must be at least 1");
}

void write_state(std::ostream& os, const State& s) {
  const Grid& g = s.grid();
  os << "GRID " << g.dim() << ' ' << fields::format_double(g.extent(0)) << ' ' << g.points(0);
  if (g.dim() == 2) os << ' ' << fields::format_double(g.extent(1)) << ' ' << g.points(1);
  os << '\n' << "TIME " << fields::format_double(s.t) << '\n';
  fields::write_field(os, "rho", s.rho);
  static const char* un[] = {"u_x", "u_y"};
  for (int c = 0; c < g.dim(); ++c) fields::write_field(os, un[c], s.u[c]);
  fields::write_field(os, "theta", s.theta);
  static const char* dn[] = {"d_1", "d_2", "d_3"};
  for (int k = 0; k < 3; ++k) fields::write_field(os, dn[k], s.d[k]);
}

State read_state(std::istream& is) {
  std::string line, tag;
  if (!std::getline(is, line)) throw Error(ErrorKind::IoError, "empty snapshot");
  std::istringstream gl(line);
  int dim = 0, nx = 0, ny = 1;
  double lx = 0, ly = 1;
  gl >> tag >> dim >> lx >> nx;
  if (dim == 2) gl >> ly >> ny;
  if (!gl || tag != "GRID") throw Error(ErrorKind::IoError, "malformed GRID line");
  Grid g;
  try {
    g = Grid(dim, lx, ly, nx, ny);
  } catch (const Error& e) {
    throw Error(ErrorKind::IoError, std::string("snapshot grid invalid: ") + e.what());
  }
  if (!std::getline(is, line)) throw Error(ErrorKind::IoError, "missing TIME line");
  std::istringstream tl(line);
  State s;
  tl >> tag >> s.t;
  if (!tl || tag != "TIME") throw Error(ErrorKind::IoError, "malformed TIME line");

  auto expect = [&](const char* name, Parity p) {
    fields::NamedField f = fields::read_field(is, g);
    if (f.name != name) throw Error(ErrorKind::IoError, std::string("expected field ") + name + ", found " + f.name);
    if (f.field.parity() != p) throw Error(ErrorKind::IoError, std::string("field ") + name + " has the wrong parity");
    return f.field;
  };
  s.rho = expect("rho", Parity::neumann());
  s.u.kind = fields::VectorKind::Velocity;
  static const char* un[] = {"u_x", "u_y"};
  for (int c = 0; c < dim; ++c) s.u.comp.push_back(expect(un[c], Parity::velocity(c)));
  s.theta = expect("theta", Parity::neumann());
  s.d.kind = fields::VectorKind::Director;
  static const char* dn[] = {"d_1", "d_2", "d_3"};
  for (int k = 0; k < 3; ++k) s.d.comp.push_back(expect(dn[k], Parity::neumann()));
  try {
    s.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::IoError, std::string("snapshot state invalid: ") + e.what());
  }
  return s;
}

}  // namespace nlc::solver
