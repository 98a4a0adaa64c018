#pragma once

#include <string>
#include <vector>

#include "nlc/constitutive/params.hpp"
#include "nlc/fields/field.hpp"
#include "nlc/solver/state.hpp"

namespace nlc::diagnostics {

// Renormalizing functions b in the continuity equation.
enum class Renorm { Identity, T1, T2, T4, ZLogZ };
const std::vector<Renorm>& all_renorms();
std::string renorm_id(Renorm b);
double renorm_b(Renorm b, double z);
double renorm_b_prime(Renorm b, double z);

// Fixed test battery (version "diag-v1"): products of the three lowest cosine
// modes per axis for scalar equations, the three lowest sine modes of each
// velocity component for the momentum equation, and the nonnegative bumps
// (1 + cos aX)(1 + cos bY)/4, a, b in {0, 1, 2}, for the thermal inequality.
struct TestBattery {
  std::vector<fields::ScalarField> scalar;
  std::vector<fields::VectorField> velocity;
  std::vector<fields::ScalarField> positive;
};
TestBattery test_battery(const fields::Grid& g);
inline constexpr const char* kBatteryVersion = "diag-v1";

// Per-step residuals of the pair (prev, next) against each test function.
// rho_t b + div(b u) + (b' rho - b) div u - eps b'(rho) lap rho = 0, written at
// mixed levels: b and b' of rho^n with the new velocity, eps-term at the new level.
std::vector<double> renorm_residuals(const solver::State& prev, const solver::State& next, Renorm b, double eps,
                                     double dt, const TestBattery& tb);
// Momentum weak form at the new level (continuous operators).
std::vector<double> momentum_residuals(const solver::State& prev, const solver::State& next,
                                       const constitutive::RegParams& reg, const constitutive::PhysParams& p,
                                       double dt, const TestBattery& tb);
// Director weak form at the new level (continuous penalty force), all components.
std::vector<double> director_residuals(const solver::State& prev, const solver::State& next,
                                       const constitutive::PhysParams& p, double dt, const TestBattery& tb);
// Signed thermal defect <production - balance, phi> on the nonnegative tests,
// using the scheme's transport and lagged conduction; positive values would
// violate the inequality.
std::vector<double> thermal_defects(const solver::State& prev, const solver::State& next,
                                    const constitutive::RegParams& reg, const constitutive::PhysParams& p,
                                    double dt, const TestBattery& tb, bool dealias = true);

double max_abs(const std::vector<double>& v);
double max_value(const std::vector<double>& v);

}  // namespace nlc::diagnostics
