#include "nsac/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nsac/operators.hpp"

namespace nsac {

namespace {

void require_positive(const FlowState& s) {
  for (int i = 0; i < s.grid.n_cells; ++i) {
    if (!(s.v[i] > 0.0)) throw PositivityError(i, "v", s.grid.x(i), s.v[i]);
    if (!(s.theta[i] > 0.0)) throw PositivityError(i, "theta", s.grid.x(i), s.theta[i]);
  }
}

double relative_entropy(double y) { return y - std::log(y) - 1.0; }

}  // namespace

double mass_excess(const FlowState& s) {
  double sum = 0.0;
  for (double v : s.v.interior()) sum += v - 1.0;
  return sum * s.grid.dx;
}

double total_energy(const FlowState& s, const SimParams& p) {
  const Field phi_x = d1_center(s.grid, s.phi);
  double sum = 0.0;
  for (int i = 0; i < s.grid.n_cells; ++i) {
    const double w = s.phi[i] * s.phi[i] - 1.0;
    sum += 0.5 * s.u[i] * s.u[i] + p.c_v * (s.theta[i] - 1.0) + w * w / (4.0 * p.epsilon) +
           0.5 * p.epsilon * phi_x[i] * phi_x[i] / s.v[i];
  }
  return sum * s.grid.dx;
}

double lyapunov_energy(const FlowState& s, const SimParams& p) {
  require_positive(s);
  const Field phi_x = d1_center(s.grid, s.phi);
  double sum = 0.0;
  for (int i = 0; i < s.grid.n_cells; ++i) {
    const double w = s.phi[i] * s.phi[i] - 1.0;
    sum += 0.5 * s.u[i] * s.u[i] + w * w / (4.0 * p.epsilon) + 0.5 * p.epsilon * phi_x[i] * phi_x[i] / s.v[i] +
           p.gas_R * relative_entropy(s.v[i]) + p.c_v * relative_entropy(s.theta[i]);
  }
  return sum * s.grid.dx;
}

double dissipation_rate(const FlowState& s, const SimParams& p) {
  require_positive(s);
  const Field theta_x = d1_center(s.grid, s.theta);
  const Field u_x = d1_center(s.grid, s.u);
  const Field mu = chemical_potential(s, p);
  double sum = 0.0;
  for (int i = 0; i < s.grid.n_cells; ++i) {
    const double v = s.v[i];
    const double th = s.theta[i];
    sum += p.kappa_tilde * std::pow(th, p.beta) * theta_x[i] * theta_x[i] / (v * th * th) +
           p.nu * u_x[i] * u_x[i] / (v * th) + v * mu[i] * mu[i] / th;
  }
  return sum * s.grid.dx;
}

namespace {

// Bisection on [lo, hi] with f(lo) and f(hi) of opposite sign, run until the
// floating-point interval cannot shrink further.
template <class F>
double bisect(F f, double lo, double hi) {
  const bool lo_positive = f(lo) > 0.0;
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((f(mid) > 0.0) == lo_positive)
      lo = mid;
    else
      hi = mid;
  }
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

}  // namespace

Brackets bracket_roots(double e0) {
  if (!(e0 >= 0.0) || !std::isfinite(e0))
    throw Error("bracket_roots: energy must be finite and >= 0, got " + std::to_string(e0));
  if (e0 == 0.0) return {1.0, 1.0};
  auto f = [e0](double y) { return y - std::log(y) - 1.0 - e0; };

  double lo = 1.0;
  double hi = 2.0;
  while (f(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  const double alpha2 = bisect(f, lo, hi);

  hi = 1.0;
  lo = 0.5;
  while (f(lo) <= 0.0) {
    hi = lo;
    lo *= 0.5;
  }
  const double alpha1 = bisect(f, lo, hi);
  return {alpha1, alpha2};
}

BracketReport cell_average_brackets(const FlowState& s, double e0_initial) {
  const MassGrid& g = s.grid;
  if (std::floor(g.half_width) != g.half_width)
    throw Error("cell_average_brackets: half width must be an integer, got " + std::to_string(g.half_width));

  BracketReport report;
  report.bounds = bracket_roots(e0_initial);
  report.tolerance = 1e-6 + g.dx * g.dx;
  const int L = static_cast<int>(g.half_width);
  const double lo = report.bounds.alpha1 - report.tolerance;
  const double hi = report.bounds.alpha2 + report.tolerance;

  for (int n = -L; n < L; ++n) {
    const double a = n;
    const double b = n + 1.0;
    const int first = std::max(0, static_cast<int>(std::floor((a + g.half_width) / g.dx)));
    const int last = std::min(g.n_cells - 1, static_cast<int>(std::ceil((b + g.half_width) / g.dx)) - 1);
    double sv = 0.0;
    double st = 0.0;
    for (int i = first; i <= last; ++i) {
      const double left = std::max(a, g.x(i) - 0.5 * g.dx);
      const double right = std::min(b, g.x(i) + 0.5 * g.dx);
      const double w = right - left;
      if (w <= 0.0) continue;
      sv += w * s.v[i];
      st += w * s.theta[i];
    }
    const bool bad = sv < lo || sv > hi || st < lo || st > hi;
    report.intervals.push_back({n, sv, st, bad});
    if (bad) ++report.violations;
  }
  return report;
}

double cutoff_weight(int n, double x) {
  if (x <= n) return std::exp(0.5 * (x - n));
  if (x >= n + 1.0) return std::exp(0.5 * (n + 1.0 - x));
  return 1.0;
}

double weighted_dissipation(const FlowState& s, const SimParams& p, double alpha, int n) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error("weighted_dissipation: alpha must lie in (0,1), got " + std::to_string(alpha));
  require_positive(s);
  const Field theta_x = d1_center(s.grid, s.theta);
  double sum = 0.0;
  for (int i = 0; i < s.grid.n_cells; ++i) {
    const double th = s.theta[i];
    sum += std::pow(th, p.beta) * theta_x[i] * theta_x[i] / (s.v[i] * std::pow(th, alpha + 1.0)) *
           cutoff_weight(n, s.grid.x(i));
  }
  return sum * s.grid.dx;
}

double momentum_identity_residual(const FlowState& s, const FlowState& initial, const SimParams& p) {
  if (!(s.grid == initial.grid)) throw Error("momentum_identity_residual: state and initial data use different grids");
  require_positive(s);
  const int n = s.grid.n_cells;
  Field w(n, 0.0);
  for (int i = -MassGrid::n_ghost; i < n + MassGrid::n_ghost; ++i)
    w[i] = p.nu * (std::log(s.v[i]) - std::log(initial.v[i])) - s.G[i];
  const Field w_x = d1_center(s.grid, w);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = w_x[i] - (s.u[i] - initial.u[i]);
    sum += r * r;
  }
  return std::sqrt(sum * s.grid.dx);
}

DiagnosticsRecord record(const FlowState& s, const SimParams& p, const RecordContext& ctx) {
  DiagnosticsRecord r;
  r.t = s.t;
  r.step = ctx.step;
  r.dt = ctx.dt;
  r.mass_excess = mass_excess(s);
  r.energy_total = total_energy(s, p);
  r.e_lyap = lyapunov_energy(s, p);
  r.v_diss = dissipation_rate(s, p);
  r.cumulative_diss = ctx.cumulative_diss;

  auto range = [](std::span<const double> f) {
    const auto [mn, mx] = std::minmax_element(f.begin(), f.end());
    return std::pair{*mn, *mx};
  };
  std::tie(r.phi_min, r.phi_max) = range(s.phi.interior());
  std::tie(r.v_min, r.v_max) = range(s.v.interior());
  std::tie(r.theta_min, r.theta_max) = range(s.theta.interior());

  if (std::floor(s.grid.half_width) == s.grid.half_width)
    r.bracket_violations = cell_average_brackets(s, ctx.e0).violations;
  r.momentum_residual = ctx.initial ? momentum_identity_residual(s, *ctx.initial, p) : 0.0;
  r.weighted_pairs = ctx.weighted;
  for (const auto& w : ctx.weighted) r.weighted_diss.push_back(weighted_dissipation(s, p, w.alpha, w.n));
  return r;
}

TrajectoryMonitor::TrajectoryMonitor(const FlowState& initial, const SimParams& params,
                                     std::vector<WeightedPair> weighted)
    : initial_(initial),
      params_(params),
      weighted_(std::move(weighted)),
      e0_(lyapunov_energy(initial, params)),
      brackets_(bracket_roots(e0_)) {}

void TrajectoryMonitor::observe(const FlowState& state, std::size_t step, double dt) {
  RecordContext ctx{&initial_, e0_, weighted_, cumulative_, step, dt};
  DiagnosticsRecord rec = record(state, params_, ctx);
  if (last_t_) {
    const double increment = 0.5 * (last_v_ + rec.v_diss) * (state.t - *last_t_);
    cumulative_ += increment;
    rec.cumulative_diss = cumulative_;
    worst_step_increase_ = std::max(worst_step_increase_, rec.e_lyap + increment - last_e_);
  }
  worst_sum_ = std::max(worst_sum_, rec.e_lyap + cumulative_);
  last_v_ = rec.v_diss;
  last_e_ = rec.e_lyap;
  last_t_ = state.t;
  last_record_ = std::move(rec);
}

DiagnosticsRecord TrajectoryMonitor::current_record() const { return last_record_; }

}  // namespace nsac
