#pragma once

#include <array>
#include <functional>
#include <vector>

#include "nlc/fields/grid.hpp"

namespace nlc::fields {

// Nodal values on a grid together with the basis they are expanded in.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(Grid grid, Parity parity);
  ScalarField(Grid grid, Parity parity, std::vector<double> values);

  static ScalarField constant(const Grid& grid, double c);
  // f(x, y); y is 0 on 1D grids.
  static ScalarField sample(const Grid& grid, Parity parity, const std::function<double(double, double)>& f);

  const Grid& grid() const { return grid_; }
  Parity parity() const { return parity_; }
  std::size_t size() const { return values_.size(); }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  double min() const;
  double max() const;
  double max_abs() const;

  // Pointwise map; the parity is kept, so the caller must know f preserves it.
  template <class F>
  ScalarField map(F f) const {
    ScalarField out(grid_, parity_);
    for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = f(values_[i]);
    return out;
  }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);
  // In-place a += s * o.
  ScalarField& axpy(double s, const ScalarField& o);

 private:
  Grid grid_;
  Parity parity_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a);
ScalarField operator*(double s, ScalarField a);
ScalarField operator*(ScalarField a, double s);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
// Pointwise a / b (parity product as for multiplication).
ScalarField divide(const ScalarField& a, const ScalarField& b);
ScalarField add_constant(ScalarField a, double c);

enum class VectorKind { Velocity, Director, Generic };

struct VectorField {
  VectorKind kind = VectorKind::Generic;
  std::vector<ScalarField> comp;

  std::size_t size() const { return comp.size(); }
  ScalarField& operator[](std::size_t i) { return comp[i]; }
  const ScalarField& operator[](std::size_t i) const { return comp[i]; }
  const Grid& grid() const { return comp.front().grid(); }

  static VectorField velocity_zero(const Grid& grid);
  static VectorField director_constant(const Grid& grid, const std::array<double, 3>& value);
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);
// Pointwise sum of component products.
ScalarField dot(const VectorField& a, const VectorField& b);

}  // namespace nlc::fields
