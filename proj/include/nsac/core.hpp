#pragma once

// Domain types for the 1-D Lagrangian Navier-Stokes/Allen-Cahn solver:
// parameters, the truncated mass grid, cell-centred fields with ghost
// layers, and the standard initial states.

#include <cstddef>
#include <span>
#include <vector>

#include "nsac/error.hpp"

namespace nsac {

enum class FaceAverage { arithmetic, harmonic };

struct SimParams {
  double epsilon = 1.0;  // interface thickness
  double beta = 1.0;     // conductivity exponent, kappa(theta) = kappa_tilde * theta^beta
  double nu = 1.0;
  double gas_R = 1.0;
  double c_v = 1.0;
  double kappa_tilde = 1.0;
  double cfl = 0.4;
  double t_final = 1.0;
  double positivity_floor = 1e-10;
  FaceAverage face_average = FaceAverage::arithmetic;

  /// Throws Error when any invariant is violated.
  void validate() const;

  double gamma() const { return 1.0 + gas_R / c_v; }
};

/// Uniform grid on [-L, L] in the Lagrangian mass coordinate.
struct MassGrid {
  static constexpr int n_ghost = 2;

  double half_width = 16.0;
  int n_cells = 512;
  double dx = 0.0625;

  /// Cell centre; valid for ghost indices too (i < 0 or i >= n_cells).
  double x(int i) const { return -half_width + (i + 0.5) * dx; }
  int n_total() const { return n_cells + 2 * n_ghost; }

  friend bool operator==(const MassGrid&, const MassGrid&) = default;
};

MassGrid make_grid(double half_width, int n_cells);

/// Cell-centred array with `MassGrid::n_ghost` ghost layers on each side.
/// Indexed by cell number, so `f[-1]` is the first left ghost and `f[n]`
/// the first right ghost.
class Field {
 public:
  Field() = default;
  explicit Field(int n_cells, double fill = 0.0)
      : n_cells_(n_cells), data_(static_cast<std::size_t>(n_cells + 2 * MassGrid::n_ghost), fill) {}

  double& operator[](int i) { return data_[static_cast<std::size_t>(i + MassGrid::n_ghost)]; }
  double operator[](int i) const { return data_[static_cast<std::size_t>(i + MassGrid::n_ghost)]; }

  int n_cells() const { return n_cells_; }
  std::span<double> interior() { return {data_.data() + MassGrid::n_ghost, static_cast<std::size_t>(n_cells_)}; }
  std::span<const double> interior() const {
    return {data_.data() + MassGrid::n_ghost, static_cast<std::size_t>(n_cells_)};
  }
  std::span<const double> raw() const { return data_; }
  std::span<double> raw() { return data_; }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  int n_cells_ = 0;
  std::vector<double> data_;
};

/// Far-field phases. Both values must be exactly +1 or -1.
struct BoundaryConfig {
  double phi_left = 1.0;
  double phi_right = 1.0;

  void validate() const;
  bool is_uniform() const { return phi_left == phi_right; }
};

/// One time level of the solution. `G` is the running time integral of
/// theta/v + (eps/2) (phi_x/v)^2 per cell; its ghosts hold the far-field
/// value of that integral, which equals `t`.
struct FlowState {
  MassGrid grid;
  double t = 0.0;
  Field v;
  Field u;
  Field theta;
  Field phi;
  Field G;

  FlowState() = default;
  explicit FlowState(const MassGrid& g)
      : grid(g), v(g.n_cells, 1.0), u(g.n_cells, 0.0), theta(g.n_cells, 1.0), phi(g.n_cells, 1.0),
        G(g.n_cells, 0.0) {}
};

/// Writes the far-field values (v, u, theta) = (1, 0, 1), phi = +-1 and
/// G = far_pressure * t into every ghost cell. The far-field pressure is
/// gas_R (theta = v = 1, phi_x = 0).
void apply_far_field(FlowState& state, const BoundaryConfig& bc, double far_pressure = 1.0);

/// Throws PositivityError for the first interior cell whose v or theta is
/// not strictly above `floor` (NaN included).
void check_positivity(const FlowState& state, double floor);

FlowState equilibrium_state(const MassGrid& grid, const BoundaryConfig& bc);

/// Gaussian bump `1 + amplitude * exp(-((x - center)/width)^2)` (or the
/// same without the 1 for velocity).
struct Bump {
  double amplitude = 0.0;
  double center = 0.0;
  double width = 1.0;

  double operator()(double x) const;
};

struct InitialProfile {
  double interface_center = 0.0;
  /// tanh width; 0 selects sqrt(2) * epsilon (the stationary profile at
  /// v = 1), narrowed if needed so the front has decayed at the ghosts.
  double interface_width = 0.0;
  /// With equal far-field phases, a positive radius inserts a droplet of
  /// the opposite phase centred at `interface_center`.
  double droplet_radius = 0.0;
  Bump v;
  Bump u;
  Bump theta;
};

/// Smooth initial data: tanh phase profile between the far-field phases
/// plus optional Gaussian bumps in v, u, theta. Rejects data whose v or
/// theta falls to the positivity floor, and data that has not reached the
/// far field to 1e-12 at the ghost layer.
FlowState interface_initial_state(const MassGrid& grid, const BoundaryConfig& bc, const SimParams& params,
                                  const InitialProfile& profile);

/// Phase profile used by interface_initial_state, as a function of x.
double initial_phase(double x, const BoundaryConfig& bc, const SimParams& params, const InitialProfile& profile);

/// interface_width if set, otherwise min(sqrt(2) eps, d / 15) with d the gap
/// between the outermost tanh front and the domain edge.
double resolved_interface_width(const MassGrid& grid, const SimParams& params, const InitialProfile& profile);

}  // namespace nsac
