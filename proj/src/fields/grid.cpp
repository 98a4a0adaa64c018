#include "nlc/fields/grid.hpp"

#include <cmath>
#include <numbers>

#include "nlc/error.hpp"

namespace nlc::fields {

Parity Parity::flipped(int a) const {
  Parity p = *this;
  Basis& b = (a == 0) ? p.x : p.y;
  b = (b == Basis::Cos) ? Basis::Sin : Basis::Cos;
  return p;
}

Parity Parity::dirichlet(int dim) {
  return dim == 1 ? Parity{Basis::Sin, Basis::Cos} : Parity{Basis::Sin, Basis::Sin};
}

Parity Parity::velocity(int comp) {
  return comp == 0 ? Parity{Basis::Sin, Basis::Cos} : Parity{Basis::Cos, Basis::Sin};
}

Parity product(Parity a, Parity b) {
  auto mul = [](Basis p, Basis q) { return p == q ? Basis::Cos : Basis::Sin; };
  return {mul(a.x, b.x), mul(a.y, b.y)};
}

std::string parity_token(Parity p, int dim) {
  if (p == Parity::neumann()) return "neumann";
  if (p == Parity::dirichlet(dim)) return "dirichlet";
  std::string s;
  for (int a = 0; a < dim; ++a) s += (p.axis(a) == Basis::Cos) ? 'C' : 'S';
  return s;
}

Parity parse_parity_token(const std::string& token, int dim) {
  if (token == "neumann") return Parity::neumann();
  if (token == "dirichlet") return Parity::dirichlet(dim);
  if (static_cast<int>(token.size()) != dim)
    throw Error(ErrorKind::IoError, "bad parity token '" + token + "'");
  Parity p;
  for (int a = 0; a < dim; ++a) {
    Basis b;
    if (token[a] == 'C') b = Basis::Cos;
    else if (token[a] == 'S') b = Basis::Sin;
    else throw Error(ErrorKind::IoError, "bad parity token '" + token + "'");
    (a == 0 ? p.x : p.y) = b;
  }
  return p;
}

struct Grid::Impl {
  int dim;
  double length[2];
  int n[2];
  std::vector<double> weights;
  double measure;
};

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(int dim, double lx, double ly, int nx, int ny) {
  if (dim != 1 && dim != 2) throw Error(ErrorKind::ValidationError, "grid dimension must be 1 or 2");
  if (!(lx > 0) || (dim == 2 && !(ly > 0)))
    throw Error(ErrorKind::ValidationError, "grid extents must be strictly positive");
  if (nx < 8 || (dim == 2 && ny < 8))
    throw Error(ErrorKind::ValidationError, "grid resolution must be at least 8 points per axis");
  if (!power_of_two(nx) || (dim == 2 && !power_of_two(ny)))
    throw Error(ErrorKind::ValidationError, "grid resolution must be a power of two");

  auto impl = std::make_shared<Impl>();
  impl->dim = dim;
  impl->length[0] = lx;
  impl->length[1] = dim == 2 ? ly : 1.0;
  impl->n[0] = nx;
  impl->n[1] = dim == 2 ? ny : 1;

  auto weights_1d = [](int n, double length) {
    if (n == 1) return std::vector<double>{1.0};
    std::vector<double> w(n, length / (n - 1));
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
  };
  std::vector<double> wx = weights_1d(impl->n[0], impl->length[0]);
  std::vector<double> wy = weights_1d(impl->n[1], impl->length[1]);
  impl->weights.resize(static_cast<std::size_t>(impl->n[0]) * impl->n[1]);
  for (int i = 0; i < impl->n[0]; ++i)
    for (int j = 0; j < impl->n[1]; ++j) impl->weights[static_cast<std::size_t>(i) * impl->n[1] + j] = wx[i] * wy[j];
  impl->measure = impl->length[0] * impl->length[1];
  impl_ = std::move(impl);
}

Grid Grid::line(int n, double length) { return Grid(1, length, 1.0, n, 1); }

Grid Grid::box(int nx, int ny, double lx, double ly) { return Grid(2, lx, ly, nx, ny); }

int Grid::dim() const { return impl_->dim; }
int Grid::points(int axis) const { return impl_->n[axis]; }
double Grid::extent(int axis) const { return impl_->length[axis]; }
double Grid::spacing(int axis) const { return impl_->length[axis] / intervals(axis); }
double Grid::node(int axis, int i) const { return i * spacing(axis); }
std::size_t Grid::size() const { return static_cast<std::size_t>(impl_->n[0]) * impl_->n[1]; }
std::size_t Grid::stride() const { return static_cast<std::size_t>(impl_->n[1]); }
const std::vector<double>& Grid::weights() const { return impl_->weights; }
double Grid::measure() const { return impl_->measure; }

double Grid::wavenumber(int axis, int k) const { return k * std::numbers::pi / impl_->length[axis]; }

int Grid::dealias_cutoff(int axis) const { return (2 * intervals(axis)) / 3; }

double Grid::mode_norm2(int axis, Basis b, int k) const {
  const int m = intervals(axis);
  const double length = impl_->length[axis];
  if (b == Basis::Sin) return (k >= 1 && k < m) ? 0.5 * length : 0.0;
  return (k == 0 || k == m) ? length : 0.5 * length;
}

bool Grid::operator==(const Grid& other) const {
  if (impl_ == other.impl_) return true;
  if (!impl_ || !other.impl_) return false;
  return impl_->dim == other.impl_->dim && impl_->n[0] == other.impl_->n[0] && impl_->n[1] == other.impl_->n[1] &&
         impl_->length[0] == other.impl_->length[0] && impl_->length[1] == other.impl_->length[1];
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (a != b) throw Error(ErrorKind::GridMismatch, std::string("fields live on different grids in ") + where);
}

}  // namespace nlc::fields
