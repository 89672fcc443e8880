#pragma once

// Manufactured-solution verification of the full scheme.
//
// Manufactured fields, with k = pi/L, E = exp(-t) and amplitude A:
//   v*     = 1 + A sin(kx) E
//   u*     =     A sin(kx) E
//   theta* = 1 + A cos(kx) (1 + cos(kx))/2 (1 - E)
//   phi*   = s (1 - A (1 + E) ((1 + cos(kx))/2)^2),   s = far-field phase
// All four reach their far-field values at x = +-L. The sources are the
// residuals of the PDE system evaluated on these fields, hand-differentiated.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "nsac/core.hpp"
#include "nsac/integrator.hpp"

namespace nsac {

struct FieldJet {
  double f;
  double fx;
  double fxx;
  double ft;
};

struct ManufacturedPoint {
  FieldJet v;
  FieldJet u;
  FieldJet theta;
  FieldJet phi;
};

/// Residuals of the four evolution equations on the manufactured fields.
/// `theta` is the residual of the c_v-weighted energy equation.
struct SourceTerms {
  double v;
  double u;
  double theta;
  double phi;
};

class ManufacturedCase {
 public:
  ManufacturedCase(const SimParams& params, double half_width, double phase, double amplitude, double t_end);

  ManufacturedPoint fields(double x, double t) const;
  SourceTerms sources(double x, double t) const;

  /// Cell-centred samples of the manufactured fields, ghosts included.
  FlowState exact_state(const MassGrid& grid, double t) const;

  /// Ghost fill from the manufactured fields plus the source terms; the
  /// returned object refers to this case and must not outlive it.
  Forcing forcing() const;

  const SimParams& params() const { return params_; }
  double half_width() const { return half_width_; }
  double phase() const { return phase_; }
  double amplitude() const { return amplitude_; }
  double t_end() const { return t_end_; }

 private:
  SimParams params_;
  double half_width_;
  double phase_;
  double amplitude_;
  double t_end_;
};

/// The standard case on the grid's domain, far-field phase +1.
ManufacturedCase default_case(const SimParams& params, const MassGrid& grid, double amplitude = 0.1,
                              double t_end = 0.5);

struct ConvergenceRow {
  int n_cells;
  std::array<double, 4> error;  // L2 errors in v, u, theta, phi at t_end
  std::array<double, 4> order;  // log2(e_{N/2} / e_N); NaN on the coarsest row
};

/// Runs the forced scheme to the case's end time at each resolution and
/// measures L2 errors against the manufactured fields. Resolutions must be
/// at least three, each double the previous.
std::vector<ConvergenceRow> convergence_study(const ManufacturedCase& mcase, std::span<const int> resolutions);

/// CSV with columns N,err_v,err_u,err_theta,err_phi,order_v,order_u,order_theta,order_phi.
std::string convergence_csv(std::span<const ConvergenceRow> rows);

}  // namespace nsac
