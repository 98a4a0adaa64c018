#include "nlc/fields/field.hpp"

#include <algorithm>
#include <cmath>

#include "nlc/error.hpp"

namespace nlc::fields {

ScalarField::ScalarField(Grid grid, Parity parity)
    : grid_(std::move(grid)), parity_(parity), values_(grid_.size(), 0.0) {}

ScalarField::ScalarField(Grid grid, Parity parity, std::vector<double> values)
    : grid_(std::move(grid)), parity_(parity), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw Error(ErrorKind::GridMismatch, "value count does not match the grid");
}

ScalarField ScalarField::constant(const Grid& grid, double c) {
  return ScalarField(grid, Parity::neumann(), std::vector<double>(grid.size(), c));
}

ScalarField ScalarField::sample(const Grid& grid, Parity parity, const std::function<double(double, double)>& f) {
  ScalarField out(grid, parity);
  const int ny = grid.points(1);
  for (int i = 0; i < grid.points(0); ++i)
    for (int j = 0; j < ny; ++j)
      out.values_[grid.index(i, j)] = f(grid.node(0, i), grid.dim() == 2 ? grid.node(1, j) : 0.0);
  // Sine directions vanish exactly at the walls.
  for (int a = 0; a < grid.dim(); ++a) {
    if (parity.axis(a) != Basis::Sin) continue;
    const int n = grid.points(a);
    for (int i = 0; i < grid.points(0); ++i)
      for (int j = 0; j < ny; ++j) {
        const int idx = (a == 0) ? i : j;
        if (idx == 0 || idx == n - 1) out.values_[grid.index(i, j)] = 0.0;
      }
  }
  return out;
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

void require_compatible(const ScalarField& a, const ScalarField& b, const char* op) {
  require_same_grid(a.grid(), b.grid(), op);
  if (a.parity() != b.parity())
    throw Error(ErrorKind::ParityMismatch, std::string("operands of ") + op + " have different parity");
}

}  // namespace

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_compatible(*this, o, "+");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_compatible(*this, o, "-");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

ScalarField& ScalarField::axpy(double s, const ScalarField& o) {
  require_compatible(*this, o, "axpy");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += s * o.values_[i];
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "*");
  ScalarField out(a.grid(), product(a.parity(), b.parity()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

ScalarField divide(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "divide");
  ScalarField out(a.grid(), product(a.parity(), b.parity()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] / b[i];
  return out;
}

ScalarField add_constant(ScalarField a, double c) {
  if (a.parity() != Parity::neumann())
    throw Error(ErrorKind::ParityMismatch, "constants can only be added to cosine fields");
  for (double& v : a.values()) v += c;
  return a;
}

VectorField VectorField::velocity_zero(const Grid& grid) {
  VectorField v;
  v.kind = VectorKind::Velocity;
  for (int c = 0; c < grid.dim(); ++c) v.comp.emplace_back(grid, Parity::velocity(c));
  return v;
}

VectorField VectorField::director_constant(const Grid& grid, const std::array<double, 3>& value) {
  VectorField v;
  v.kind = VectorKind::Director;
  for (double c : value) v.comp.push_back(ScalarField::constant(grid, c));
  return v;
}

VectorField operator+(VectorField a, const VectorField& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

VectorField operator-(VectorField a, const VectorField& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

VectorField operator*(double s, VectorField a) {
  for (auto& c : a.comp) c *= s;
  return a;
}

ScalarField dot(const VectorField& a, const VectorField& b) {
  ScalarField out = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) out += a[i] * b[i];
  return out;
}

}  // namespace nlc::fields
