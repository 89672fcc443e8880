#include "nsac/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nsac {

const char* to_string(StepLimit limit) {
  switch (limit) {
    case StepLimit::diffusion:
      return "diffusion";
    case StepLimit::acoustic:
      return "acoustic";
    case StepLimit::reaction:
      return "reaction";
  }
  return "?";
}

StableStep stable_dt(const FlowState& s, const SimParams& p) {
  const double dx = s.grid.dx;
  const double gamma = p.gamma();
  double diffusion = std::numeric_limits<double>::infinity();
  double acoustic = diffusion;
  double reaction = diffusion;
  for (int i = 0; i < s.grid.n_cells; ++i) {
    const double v = s.v[i];
    const double th = s.theta[i];
    const double ph = s.phi[i];
    if (!std::isfinite(v) || !std::isfinite(th) || !std::isfinite(ph) || !std::isfinite(s.u[i]))
      throw Error("stable_dt: non-finite field value in cell " + std::to_string(i));
    if (!(v > 0.0) || !(th > 0.0)) throw PositivityError(i, v > 0.0 ? "theta" : "v", s.grid.x(i), v > 0.0 ? th : v);
    const double coeff = p.nu / v + p.kappa_tilde * std::pow(th, p.beta) / (p.c_v * v) + p.epsilon / v;
    diffusion = std::min(diffusion, dx * dx / (2.0 * coeff));
    acoustic = std::min(acoustic, dx * v / std::sqrt(gamma * p.gas_R * th));
    reaction = std::min(reaction, p.epsilon / (1.0 + std::abs(3.0 * ph * ph - 1.0) * v / p.epsilon));
  }
  StableStep out{diffusion, StepLimit::diffusion};
  if (acoustic < out.dt) out = {acoustic, StepLimit::acoustic};
  if (reaction < out.dt) out = {reaction, StepLimit::reaction};
  out.dt *= p.cfl;
  return out;
}

namespace {

void fill_ghosts(FlowState& s, const SimParams& p, const BoundaryConfig& bc, const Forcing* forcing) {
  if (forcing && forcing->fill_ghosts)
    forcing->fill_ghosts(s);
  else
    apply_far_field(s, bc, p.gas_R);
}

Rhs evaluate(const FlowState& s, const SimParams& p, const Forcing* forcing) {
  Rhs r = semi_discrete_rhs(s, p);
  if (forcing && forcing->add_source) forcing->add_source(s, r);
  return r;
}

void axpy_interior(Field& y, const Field& x, double a, const std::vector<double>& d) {
  for (int i = 0; i < x.n_cells(); ++i) y[i] = x[i] + a * d[static_cast<std::size_t>(i)];
}

void average_interior(Field& out, const Field& a, const Field& b, double dt, const std::vector<double>& d) {
  for (int i = 0; i < a.n_cells(); ++i) out[i] = 0.5 * (a[i] + b[i] + dt * d[static_cast<std::size_t>(i)]);
}

}  // namespace

FlowState heun_step(const FlowState& state, const SimParams& p, const BoundaryConfig& bc, double dt,
                    const Forcing* forcing) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("heun_step: time step must be positive and finite");

  FlowState s0 = state;
  fill_ghosts(s0, p, bc, forcing);
  const Rhs k1 = evaluate(s0, p, forcing);

  FlowState s1 = s0;
  s1.t = s0.t + dt;
  axpy_interior(s1.v, s0.v, dt, k1.dv);
  axpy_interior(s1.u, s0.u, dt, k1.du);
  axpy_interior(s1.theta, s0.theta, dt, k1.dtheta);
  axpy_interior(s1.phi, s0.phi, dt, k1.dphi);
  axpy_interior(s1.G, s0.G, dt, k1.dG);
  fill_ghosts(s1, p, bc, forcing);
  const Rhs k2 = evaluate(s1, p, forcing);

  FlowState out = s1;
  average_interior(out.v, s0.v, s1.v, dt, k2.dv);
  average_interior(out.u, s0.u, s1.u, dt, k2.du);
  average_interior(out.theta, s0.theta, s1.theta, dt, k2.dtheta);
  average_interior(out.phi, s0.phi, s1.phi, dt, k2.dphi);
  average_interior(out.G, s0.G, s1.G, dt, k2.dG);
  fill_ghosts(out, p, bc, forcing);
  check_positivity(out, p.positivity_floor);
  return out;
}

FlowState step(const FlowState& state, const SimParams& p, const BoundaryConfig& bc, StepControl& control,
               std::optional<double> dt_cap, const Forcing* forcing) {
  StableStep stable = stable_dt(state, p);
  double dt = stable.dt;
  if (dt_cap && *dt_cap < dt) dt = *dt_cap;
  FlowState next = heun_step(state, p, bc, dt, forcing);
  control.dt_last = dt;
  control.limit_kind = stable.limit;
  control.step_count += 1;
  control.dt_next = stable_dt(next, p).dt;
  return next;
}

RunAborted::RunAborted(const std::string& cause, FlowState last_good, StepControl control, std::optional<int> cell,
                       std::string field)
    : Error("run aborted at t = " + std::to_string(last_good.t) + " after " + std::to_string(control.step_count) +
            " steps: " + cause),
      last_good_(std::move(last_good)),
      control_(control),
      cell_(cell),
      field_(std::move(field)) {}

FlowState run(const FlowState& initial, const SimParams& p, const BoundaryConfig& bc, const RunOptions& opt,
              const Observer& observer, const Forcing* forcing, StepControl* control_out) {
  if (opt.t_final < initial.t) throw Error("run: t_final lies before the initial time");

  FlowState s = initial;
  fill_ghosts(s, p, bc, forcing);
  StepControl control;
  control.dt_next = stable_dt(s, p).dt;
  if (observer) observer(s, control);

  double next_mark = opt.observe_every_time > 0.0 ? s.t + opt.observe_every_time
                                                  : std::numeric_limits<double>::infinity();
  while (s.t < opt.t_final) {
    if (control.step_count >= opt.max_steps) {
      throw RunAborted("step limit reached", s, control, std::nullopt, {});
    }
    const double remaining = opt.t_final - s.t;
    // Accumulated t drifts by roundoff; absorb a sliver instead of taking it as an extra step.
    const bool last = remaining <= control.dt_next * (1.0 + 1e-6);
    try {
      s = step(s, p, bc, control, last ? std::optional<double>(remaining) : std::nullopt, forcing);
    } catch (const PositivityError& e) {
      throw RunAborted(e.what(), s, control, e.cell(), e.field());
    } catch (const Error& e) {
      throw RunAborted(e.what(), s, control, std::nullopt, {});
    }
    if (last) {
      s.t = opt.t_final;
      fill_ghosts(s, p, bc, forcing);
    }

    bool due = last;
    if (opt.observe_every_steps > 0 && control.step_count % opt.observe_every_steps == 0) due = true;
    if (s.t >= next_mark) {
      due = true;
      while (next_mark <= s.t) next_mark += opt.observe_every_time;
    }
    if (due && observer) observer(s, control);
  }
  if (control_out) *control_out = control;
  return s;
}

}  // namespace nsac
