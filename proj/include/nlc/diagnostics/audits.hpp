#pragma once

#include <vector>

#include "nlc/constitutive/params.hpp"
#include "nlc/fields/field.hpp"
#include "nlc/solver/state.hpp"

namespace nlc::diagnostics {

// Right inverse of the divergence on zero-mean cosine fields:
// B[h] = grad of the Neumann potential. div B[h] = h and B[h].n = 0 on the
// walls; the tangential trace is not zero (see bogovskii_tangential_trace).
fields::VectorField bogovskii_surrogate(const fields::ScalarField& h);
// Largest tangential boundary value of B, reported for reference.
double bogovskii_tangential_trace(const fields::VectorField& b);

// Pressure-weighted density int (rho^gamma + R rho theta + delta rho^beta) rho of one state.
double pressure_weight_density(const solver::State& s, const constitutive::RegParams& reg,
                               const constitutive::PhysParams& p);
// Right-endpoint time quadrature over a trajectory states[0..n] at increasing times.
double pressure_weight(const std::vector<solver::State>& traj, const constitutive::RegParams& reg,
                       const constitutive::PhysParams& p);

// sup over k in {1, 2, 4, 8} of the space-time quadrature of
// |T_k(rho_seq) - T_k(rho_ref)|^{gamma+1}; snapshots weighted by `dt_weights`
// (one weight of 1 per snapshot when empty).
double oscillation_defect(const std::vector<fields::ScalarField>& rho_seq,
                          const std::vector<fields::ScalarField>& rho_ref, double gamma,
                          const std::vector<double>& dt_weights = {});

}  // namespace nlc::diagnostics
