#pragma once

// Scalar functionals of a flow state: conserved integrals, the entropy-type
// Lyapunov functional and its dissipation rate, unit-interval average
// brackets, weighted conduction dissipation and the integrated-momentum
// residual for the closed-form representation of v.

#include <cstddef>
#include <optional>
#include <vector>

#include "nsac/core.hpp"

namespace nsac {

/// Sum of (v - 1) dx over the interior.
double mass_excess(const FlowState& state);

/// Sum of (u^2/2 + c_v (theta - 1) + (phi^2-1)^2/(4 eps) + (eps/2) phi_x^2 / v) dx.
double total_energy(const FlowState& state, const SimParams& params);

/// Sum of (u^2/2 + (phi^2-1)^2/(4 eps) + (eps/2) phi_x^2/v
///         + R (v - ln v - 1) + c_v (theta - ln theta - 1)) dx.
/// Throws PositivityError for non-positive v or theta.
double lyapunov_energy(const FlowState& state, const SimParams& params);

/// V(t) = sum of (kappa_tilde theta^beta theta_x^2/(v theta^2) + nu u_x^2/(v theta) + v mu^2/theta) dx.
double dissipation_rate(const FlowState& state, const SimParams& params);

struct Brackets {
  double alpha1;
  double alpha2;
};

/// The two roots 0 < alpha1 <= 1 <= alpha2 of y - ln y - 1 = e0, by
/// bisection. Both equal 1 when e0 = 0. Throws for negative or non-finite e0.
Brackets bracket_roots(double e0);

struct UnitAverage {
  int n;  // interval [n, n+1]
  double v_mean;
  double theta_mean;
  bool violated;
};

struct BracketReport {
  Brackets bounds;
  double tolerance;
  std::vector<UnitAverage> intervals;
  int violations = 0;
};

/// Averages of v and theta over every unit interval [n, n+1] inside
/// [-L, L], checked against the brackets of `e0_initial` widened by
/// 1e-6 + dx^2. Requires an integer half width.
BracketReport cell_average_brackets(const FlowState& state, double e0_initial);

/// Cut-off weight: exp((x-n)/2) left of n, 1 on [n, n+1], exp((n+1-x)/2) right of n+1.
double cutoff_weight(int n, double x);

/// Sum of theta^beta theta_x^2 / (v theta^(alpha+1)) * cutoff_weight(n, x) dx.
/// Requires 0 < alpha < 1.
double weighted_dissipation(const FlowState& state, const SimParams& params, double alpha, int n);

/// L2 norm of R = nu d1(ln v - ln v0) - d1(G) - (u - u0), the residual of the
/// time-integrated momentum equation. Zero at t = 0.
double momentum_identity_residual(const FlowState& state, const FlowState& initial, const SimParams& params);

struct WeightedPair {
  double alpha;
  int n;

  friend bool operator==(const WeightedPair&, const WeightedPair&) = default;
};

struct DiagnosticsRecord {
  double t = 0.0;
  std::size_t step = 0;
  double dt = 0.0;
  double mass_excess = 0.0;
  double energy_total = 0.0;
  double e_lyap = 0.0;
  double v_diss = 0.0;
  double cumulative_diss = 0.0;
  double phi_min = 0.0;
  double phi_max = 0.0;
  double v_min = 0.0;
  double v_max = 0.0;
  double theta_min = 0.0;
  double theta_max = 0.0;
  int bracket_violations = 0;
  double momentum_residual = 0.0;
  std::vector<WeightedPair> weighted_pairs;
  std::vector<double> weighted_diss;

  friend bool operator==(const DiagnosticsRecord&, const DiagnosticsRecord&) = default;
};

struct RecordContext {
  const FlowState* initial = nullptr;  // for the momentum residual; null reports 0
  double e0 = 0.0;                     // Lyapunov energy of the initial state
  std::vector<WeightedPair> weighted;
  double cumulative_diss = 0.0;
  std::size_t step = 0;
  double dt = 0.0;
};

DiagnosticsRecord record(const FlowState& state, const SimParams& params, const RecordContext& context);

/// Follows a trajectory step by step, accumulating the time integral of the
/// dissipation rate with the trapezoidal rule, and produces records.
class TrajectoryMonitor {
 public:
  TrajectoryMonitor(const FlowState& initial, const SimParams& params, std::vector<WeightedPair> weighted = {});

  /// Call once for every accepted state, in order, starting with the initial one.
  void observe(const FlowState& state, std::size_t step, double dt);

  DiagnosticsRecord current_record() const;
  const FlowState& initial() const { return initial_; }

  double e0() const { return e0_; }
  const Brackets& brackets() const { return brackets_; }
  double cumulative_dissipation() const { return cumulative_; }
  /// Largest value of e_lyap(t) + cumulative dissipation seen so far.
  double worst_lyapunov_sum() const { return worst_sum_; }
  /// Largest step-to-step increase of e_lyap + V dt (>0 means an increase).
  double worst_step_increase() const { return worst_step_increase_; }

 private:
  FlowState initial_;
  SimParams params_;
  std::vector<WeightedPair> weighted_;
  double e0_;
  Brackets brackets_;
  std::optional<double> last_t_;
  DiagnosticsRecord last_record_;
  double last_v_ = 0.0;
  double last_e_ = 0.0;
  double cumulative_ = 0.0;
  double worst_sum_ = 0.0;
  double worst_step_increase_ = -1.0e300;
};

}  // namespace nsac
