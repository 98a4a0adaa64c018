#pragma once

#include <iosfwd>
#include <string>

#include "nlc/fields/field.hpp"

namespace nlc::fields {

// Plain-text block:
//   FIELD <name> <parity> <N_x> [<N_y>]
//   one row of N_y values per x index (17 significant digits)
void write_field(std::ostream& os, const std::string& name, const ScalarField& f);

struct NamedField {
  std::string name;
  ScalarField field;
};

// Reads one block; the grid supplies extents and must match the header.
NamedField read_field(std::istream& is, const Grid& grid);

std::string format_double(double v);

}  // namespace nlc::fields
