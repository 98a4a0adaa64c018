#include "nlc/fields/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace nlc::fields {

namespace {

// ---------------------------------------------------------------------------
// FFTW plan cache. The planner is not reentrant, so plan creation is guarded;
// execution uses per-thread buffers.
// ---------------------------------------------------------------------------

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct LinePlan {
  fftw_plan plan = nullptr;
  double* in = nullptr;
  double* out = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    for (auto& [key, p] : plans_) {
      fftw_destroy_plan(p.plan);
      fftw_free(p.in);
      fftw_free(p.out);
    }
  }

  LinePlan& get(fftw_r2r_kind kind, int n) {
    auto key = std::make_pair(static_cast<int>(kind), n);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::lock_guard<std::mutex> lock(planner_mutex());
    LinePlan p;
    p.in = static_cast<double*>(fftw_malloc(sizeof(double) * n));
    p.out = static_cast<double*>(fftw_malloc(sizeof(double) * n));
    p.plan = fftw_plan_r2r_1d(n, p.in, p.out, kind, FFTW_ESTIMATE);
    return plans_.emplace(key, p).first->second;
  }

 private:
  std::map<std::pair<int, int>, LinePlan> plans_;
};

PlanCache& plans() {
  thread_local PlanCache cache;
  return cache;
}

// Transforms every grid line along `axis` in place.
void transform_axis(std::vector<double>& v, const Grid& g, int axis, Basis basis, bool forward) {
  const int n = g.points(axis);
  const int m = n - 1;
  const std::size_t step = axis == 0 ? g.stride() : 1;
  const int lines = axis == 0 ? g.points(1) : g.points(0);

  LinePlan& p = basis == Basis::Cos ? plans().get(FFTW_REDFT00, n) : plans().get(FFTW_RODFT00, m - 1);

  for (int line = 0; line < lines; ++line) {
    const std::size_t base = axis == 0 ? static_cast<std::size_t>(line) : g.index(line, 0);
    auto at = [&](int i) -> double& { return v[base + i * step]; };

    if (basis == Basis::Cos) {
      if (forward) {
        for (int i = 0; i < n; ++i) p.in[i] = at(i);
        fftw_execute(p.plan);
        for (int k = 0; k < n; ++k) at(k) = p.out[k] / ((k == 0 || k == m) ? 2.0 * m : m);
      } else {
        for (int k = 0; k < n; ++k) p.in[k] = (k == 0 || k == m) ? at(k) : 0.5 * at(k);
        fftw_execute(p.plan);
        for (int i = 0; i < n; ++i) at(i) = p.out[i];
      }
    } else {
      if (forward) {
        for (int j = 1; j < m; ++j) p.in[j - 1] = at(j);
        fftw_execute(p.plan);
        at(0) = 0.0;
        at(m) = 0.0;
        for (int k = 1; k < m; ++k) at(k) = p.out[k - 1] / m;
      } else {
        for (int k = 1; k < m; ++k) p.in[k - 1] = 0.5 * at(k);
        fftw_execute(p.plan);
        at(0) = 0.0;
        at(m) = 0.0;
        for (int j = 1; j < m; ++j) at(j) = p.out[j - 1];
      }
    }
  }
}

}  // namespace

std::vector<double> to_spectral(const ScalarField& f) {
  std::vector<double> c = f.values();
  for (int a = 0; a < f.grid().dim(); ++a) transform_axis(c, f.grid(), a, f.parity().axis(a), true);
  return c;
}

ScalarField from_spectral(const Grid& grid, Parity parity, const std::vector<double>& coeffs) {
  std::vector<double> v = coeffs;
  for (int a = 0; a < grid.dim(); ++a) transform_axis(v, grid, a, parity.axis(a), false);
  return ScalarField(grid, parity, std::move(v));
}

double mode_norm2(const Grid& grid, Parity parity, int kx, int ky) {
  double n = grid.mode_norm2(0, parity.x, kx);
  if (grid.dim() == 2) n *= grid.mode_norm2(1, parity.y, ky);
  return n;
}

double spectral_norm2(const ScalarField& f) {
  const Grid& g = f.grid();
  const std::vector<double> c = to_spectral(f);
  double s = 0.0;
  for (int i = 0; i < g.points(0); ++i)
    for (int j = 0; j < g.points(1); ++j) {
      const double a = c[g.index(i, j)];
      s += a * a * mode_norm2(g, f.parity(), i, j);
    }
  return s;
}

}  // namespace nlc::fields
