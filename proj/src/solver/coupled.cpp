#include "nlc/solver/coupled.hpp"

#include <algorithm>
#include <cmath>

#include "nlc/error.hpp"
#include "nlc/fields/operators.hpp"

namespace nlc::solver {

StepResult step_fixed(const State& s, const Problem& pb, const GalerkinBasis& basis, double dt) {
  const Sources src = pb.sources ? pb.sources(s.t + dt) : Sources{};
  const bool dealias = pb.cfg.dealias;
  fields::VectorField u_k = s.u;
  const double floor = 1e-14 * std::sqrt(s.grid().measure());
  for (int it = 1; it <= pb.cfg.picard_max; ++it) {
    DensityUpdate dens = density_update(s.rho, u_k, pb.reg.eps, dt, dealias, src.rho ? &*src.rho : nullptr);
    DirectorUpdate dir = director_update(s.d, u_k, dt, pb.phys, dealias, src.d ? &*src.d : nullptr);

    TemperatureInputs ti;
    ti.theta = &s.theta;
    ti.rho_old = &s.rho;
    ti.rho_new = &dens.rho;
    ti.u = &u_k;
    ti.mu = &dir.mu;
    ti.source = src.theta ? &*src.theta : nullptr;
    fields::ScalarField theta = temperature_update(ti, pb.reg, pb.phys, dt, dealias);

    MomentumInputs mi;
    mi.rho_old = &s.rho;
    mi.rho_new = &dens.rho;
    mi.theta_new = &theta;
    mi.u_old = &s.u;
    mi.u_iter = &u_k;
    mi.d_old = &s.d;
    mi.mu = &dir.mu;
    mi.flux = &dens.flux;
    mi.source = src.m ? &*src.m : nullptr;
    fields::VectorField u_next = momentum_update(mi, basis, pb.reg, pb.phys, dt, dealias);

    const double change = fields::l2_norm(u_next - u_k);
    const double size = fields::l2_norm(u_next);
    // The absolute floor absorbs round-off when the velocity vanishes.
    if (change <= pb.cfg.picard_tol * size + floor) {
      // Transport the density with the accepted velocity so the discrete
      // continuity equation holds exactly for the stored pair.
      if (change > 0.0)
        dens = density_update(s.rho, u_next, pb.reg.eps, dt, dealias, src.rho ? &*src.rho : nullptr);
      StepResult r;
      r.next.t = s.t + dt;
      r.next.rho = std::move(dens.rho);
      r.next.u = std::move(u_next);
      r.next.theta = std::move(theta);
      r.next.d = std::move(dir.d);
      r.info.dt = dt;
      r.info.picard_iterations = it;
      r.info.picard_change = size > 0.0 ? change / size : 0.0;
      return r;
    }
    u_k = std::move(u_next);
  }
  throw Error(ErrorKind::PicardDivergence,
              "Picard iteration exceeded " + std::to_string(pb.cfg.picard_max) + " sweeps at t = " + std::to_string(s.t));
}

StepResult step_coupled(const State& s, const Problem& pb, const GalerkinBasis& basis, double dt) {
  constexpr int kMaxHalvings = 10;
  for (int h = 0;; ++h) {
    try {
      StepResult r = step_fixed(s, pb, basis, dt);
      r.info.halvings = h;
      return r;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PositivityLoss) throw;
      if (h == kMaxHalvings)
        throw Error(ErrorKind::StepUnderflow,
                    "step size underflow after " + std::to_string(kMaxHalvings) + " halvings: " + e.what());
      dt *= 0.5;
    }
  }
}

RunResult run(const State& s0, const Problem& pb, StepObserver* obs, std::vector<double> stops) {
  pb.cfg.validate();
  pb.phys.validate();
  pb.reg.validate(pb.phys);
  s0.validate();
  const GalerkinBasis basis(s0.grid(), pb.reg.n);

  const double t_end = pb.cfg.t_end;
  stops.push_back(t_end);
  std::sort(stops.begin(), stops.end());
  const double eps_t = 1e-9 * pb.cfg.dt;

  RunResult res;
  State s = s0;
  if (obs) obs->on_start(s);
  auto stop = stops.begin();
  while (s.t < t_end - eps_t) {
    while (stop != stops.end() && *stop <= s.t + eps_t) ++stop;
    const double target = stop == stops.end() ? t_end : *stop;
    double dt = pb.cfg.dt;
    if (target - s.t <= dt + eps_t) dt = target - s.t;
    StepResult r = step_coupled(s, pb, basis, dt);
    if (std::abs(r.next.t - target) <= eps_t) r.next.t = target;
    if (obs) obs->on_step(s, r.next, r.info);
    res.steps += 1;
    res.total_picard += r.info.picard_iterations;
    s = std::move(r.next);
  }
  res.final_state = std::move(s);
  return res;
}

}  // namespace nlc::solver
