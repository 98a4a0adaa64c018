#include "nlc/fields/snapshot.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "nlc/error.hpp"

namespace nlc::fields {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field(std::ostream& os, const std::string& name, const ScalarField& f) {
  const Grid& g = f.grid();
  os << "FIELD " << name << ' ' << parity_token(f.parity(), g.dim()) << ' ' << g.points(0);
  if (g.dim() == 2) os << ' ' << g.points(1);
  os << '\n';
  for (int i = 0; i < g.points(0); ++i) {
    for (int j = 0; j < g.points(1); ++j) {
      if (j) os << ' ';
      os << format_double(f[g.index(i, j)]);
    }
    os << '\n';
  }
}

NamedField read_field(std::istream& is, const Grid& grid) {
  std::string line;
  while (std::getline(is, line) && line.empty()) {
  }
  std::istringstream header(line);
  std::string tag, name, parity;
  int nx = 0, ny = 1;
  header >> tag >> name >> parity >> nx;
  if (grid.dim() == 2) header >> ny;
  if (!header || tag != "FIELD") throw Error(ErrorKind::IoError, "malformed FIELD header: '" + line + "'");
  if (nx != grid.points(0) || ny != grid.points(1))
    throw Error(ErrorKind::IoError, "field '" + name + "' resolution does not match the grid");

  NamedField out{name, ScalarField(grid, parse_parity_token(parity, grid.dim()))};
  for (int i = 0; i < nx; ++i) {
    if (!std::getline(is, line)) throw Error(ErrorKind::IoError, "field '" + name + "' is truncated");
    std::istringstream row(line);
    for (int j = 0; j < ny; ++j) {
      double v;
      if (!(row >> v)) throw Error(ErrorKind::IoError, "field '" + name + "' has an unreadable value");
      out.field[grid.index(i, j)] = v;
    }
    std::string extra;
    if (row >> extra) throw Error(ErrorKind::IoError, "field '" + name + "' has trailing data");
  }
  return out;
}

}  // namespace nlc::fields
