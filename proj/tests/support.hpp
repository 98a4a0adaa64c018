#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "nlc/fields/field.hpp"
#include "nlc/fields/spectral.hpp"

namespace testing {

using namespace nlc::fields;

inline constexpr double kPi = std::numbers::pi;

inline double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Random coefficients on modes with index <= kmax per axis (valid slots only).
inline ScalarField random_band_limited(const Grid& g, Parity p, int kmax, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(g.size(), 0.0);
  for (int i = 0; i < g.points(0); ++i)
    for (int j = 0; j < g.points(1); ++j) {
      if (i > kmax || j > kmax) continue;
      if (mode_norm2(g, p, i, j) == 0.0) continue;
      c[g.index(i, j)] = u(rng);
    }
  return from_spectral(g, p, c);
}

// Arbitrary nodal values compatible with the parity (zero at sine walls).
inline ScalarField random_nodal(const Grid& g, Parity p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return ScalarField::sample(g, p, [&](double, double) { return u(rng); });
}

}  // namespace testing
