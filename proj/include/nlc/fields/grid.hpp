#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace nlc::fields {

// Per-axis trigonometric basis of a field: cosine (vanishing normal derivative)
// or sine (vanishing value) on a box with nodes at both walls.
enum class Basis { Cos, Sin };

struct Parity {
  Basis x = Basis::Cos;
  Basis y = Basis::Cos;

  Basis axis(int a) const { return a == 0 ? x : y; }
  Parity flipped(int a) const;

  static Parity neumann() { return {}; }
  static Parity dirichlet(int dim);
  // Component `comp` of a velocity field: sine along its own axis, cosine across.
  static Parity velocity(int comp);

  friend bool operator==(const Parity&, const Parity&) = default;
};

// Parity of a pointwise product (sin*sin and cos*cos are cosine-type).
Parity product(Parity a, Parity b);

// "neumann", "dirichlet", or per-axis letters such as "SC".
std::string parity_token(Parity p, int dim);
Parity parse_parity_token(const std::string& token, int dim);

// Tensor grid on [0,Lx] x [0,Ly] with N points per axis, including both walls.
// Quadrature is the trapezoid rule; with M = N-1 intervals it integrates
// cosine polynomials of degree < 2M exactly.
class Grid {
 public:
  Grid() = default;
  Grid(int dim, double lx, double ly, int nx, int ny);

  static Grid line(int n, double length);
  static Grid box(int nx, int ny, double lx, double ly);

  bool valid() const { return static_cast<bool>(impl_); }
  int dim() const;
  int points(int axis) const;
  int intervals(int axis) const { return points(axis) - 1; }
  double extent(int axis) const;
  double spacing(int axis) const;
  double node(int axis, int i) const;

  std::size_t size() const;
  std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(ix) * stride() + iy; }
  std::size_t stride() const;  // distance between consecutive x indices

  const std::vector<double>& weights() const;
  double measure() const;

  double wavenumber(int axis, int k) const;
  // Highest mode index kept by the 2/3 dealiasing filter.
  int dealias_cutoff(int axis) const;
  // Discrete squared norm of the 1D mode k of the given basis.
  double mode_norm2(int axis, Basis b, int k) const;

  bool operator==(const Grid& other) const;
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace nlc::fields
