#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "nlc/constitutive/params.hpp"
#include "nlc/fields/grid.hpp"
#include "nlc/solver/state.hpp"

namespace nlc::io {

struct GridConfig {
  int dim = 2;
  double lx = 1.0;
  double ly = 1.0;
  int nx = 32;
  int ny = 32;

  fields::Grid make() const;
};

struct InitConfig {
  std::string preset = "coupled";  // ignored when snapshot is set
  std::string snapshot;            // path of a stored state
  double theta_min = 0.0;
  double theta_max = std::numeric_limits<double>::infinity();
};

struct OutputConfig {
  std::string dir = "out";
  int snapshot_every = 10;  // steps between snapshots; 0 keeps only the first and last
  bool csv = true;
};

struct ContinuationConfig {
  std::string study = "viscosity";  // galerkin, viscosity, pressure
  // Lists of length 1 are broadcast to the schedule length.
  std::vector<int> n = {8};
  std::vector<double> eps = {0.1, 0.05, 0.025};
  std::vector<double> delta = {1e-3};
  std::vector<double> snapshot_times;  // empty: t_end only
};

struct RunConfig {
  GridConfig grid;
  constitutive::PhysParams phys;
  constitutive::RegParams reg;
  solver::SolverConfig solver;
  InitConfig init;
  OutputConfig output;
  ContinuationConfig continuation;

  // Revalidates every parameter block (ValidationError).
  void validate() const;
};

// Flat "section.key = value" text; '#' starts a comment. Unknown or repeated
// keys and malformed values raise ParseError with the line number; every key
// left at its default is reported on `log` when it is non-null.
RunConfig parse_config_text(const std::string& text, std::ostream* log = nullptr,
                            const std::string& origin = "config");
RunConfig parse_config(const std::string& path, std::ostream* log = nullptr);

// Every key in a fixed order; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& c);

// Names of all recognized keys, in serialization order.
std::vector<std::string> config_keys();

}  // namespace nlc::io
