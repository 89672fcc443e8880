#include "nsac/core.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace nsac {

PositivityError::PositivityError(int cell, std::string field, double x, double value)
    : Error([&] {
        std::ostringstream os;
        os.precision(17);
        os << "positivity violated: field '" << field << "' = " << value << " in cell " << cell << " (x = " << x
           << ")";
        return os.str();
      }()),
      cell_(cell),
      field_(std::move(field)),
      x_(x),
      value_(value) {}

ConfigError::ConfigError(const std::string& message, int line, std::string key)
    : Error(message), line_(line), key_(std::move(key)) {}

void SimParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(std::string("invalid parameters: ") + what);
  };
  require(epsilon > 0.0 && std::isfinite(epsilon), "epsilon must be > 0");
  require(beta > 0.0 && std::isfinite(beta), "beta must be > 0");
  require(nu > 0.0 && gas_R > 0.0 && c_v > 0.0 && kappa_tilde > 0.0,
          "nu, gas_R, c_v, kappa_tilde must be > 0");
  require(cfl > 0.0 && cfl < 1.0, "cfl must lie in (0,1)");
  require(t_final >= 0.0 && std::isfinite(t_final), "t_final must be >= 0");
  require(positivity_floor > 0.0, "positivity_floor must be > 0");
}

MassGrid make_grid(double half_width, int n_cells) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw Error("make_grid: half width must be positive, got " + std::to_string(half_width));
  if (n_cells < 8 || n_cells % 2 != 0)
    throw Error("make_grid: cell count must be even and >= 8, got " + std::to_string(n_cells));
  MassGrid g;
  g.half_width = half_width;
  g.n_cells = n_cells;
  g.dx = 2.0 * half_width / n_cells;
  return g;
}

void BoundaryConfig::validate() const {
  auto unit = [](double p) { return p == 1.0 || p == -1.0; };
  if (!unit(phi_left) || !unit(phi_right)) throw Error("boundary phases must be exactly +1 or -1");
}

void apply_far_field(FlowState& s, const BoundaryConfig& bc, double far_pressure) {
  const int n = s.grid.n_cells;
  for (int k = 1; k <= MassGrid::n_ghost; ++k) {
    for (int i : {-k, n - 1 + k}) {
      s.v[i] = 1.0;
      s.u[i] = 0.0;
      s.theta[i] = 1.0;
      s.G[i] = far_pressure * s.t;
    }
    s.phi[-k] = bc.phi_left;
    s.phi[n - 1 + k] = bc.phi_right;
  }
}

void check_positivity(const FlowState& s, double floor) {
  for (int i = 0; i < s.grid.n_cells; ++i) {
    if (!(s.v[i] > floor) || !std::isfinite(s.v[i])) throw PositivityError(i, "v", s.grid.x(i), s.v[i]);
    if (!(s.theta[i] > floor) || !std::isfinite(s.theta[i]))
      throw PositivityError(i, "theta", s.grid.x(i), s.theta[i]);
  }
}

FlowState equilibrium_state(const MassGrid& grid, const BoundaryConfig& bc) {
  bc.validate();
  if (!bc.is_uniform()) throw Error("equilibrium_state: far-field phases differ, no constant equilibrium exists");
  FlowState s(grid);
  for (int i = -MassGrid::n_ghost; i < grid.n_cells + MassGrid::n_ghost; ++i) s.phi[i] = bc.phi_left;
  apply_far_field(s, bc);
  return s;
}

double Bump::operator()(double x) const {
  if (amplitude == 0.0) return 0.0;
  const double z = (x - center) / width;
  return amplitude * std::exp(-z * z);
}

double initial_phase(double x, const BoundaryConfig& bc, const SimParams& params, const InitialProfile& p) {
  const double w = p.interface_width > 0.0 ? p.interface_width : std::sqrt(2.0) * params.epsilon;
  const double xc = x - p.interface_center;
  if (!bc.is_uniform()) {
    return 0.5 * (bc.phi_left + bc.phi_right) + 0.5 * (bc.phi_right - bc.phi_left) * std::tanh(xc / w);
  }
  if (p.droplet_radius > 0.0) {
    const double r = p.droplet_radius;
    return bc.phi_left * std::tanh((xc - r) / w) * std::tanh((xc + r) / w);
  }
  return bc.phi_left;
}

double resolved_interface_width(const MassGrid& grid, const SimParams& params, const InitialProfile& profile) {
  if (profile.interface_width > 0.0) return profile.interface_width;
  const double reach = grid.half_width - std::abs(profile.interface_center) - profile.droplet_radius;
  const double natural = std::sqrt(2.0) * params.epsilon;
  return reach > 0.0 ? std::min(natural, reach / 15.0) : natural;
}

FlowState interface_initial_state(const MassGrid& grid, const BoundaryConfig& bc, const SimParams& params,
                                  const InitialProfile& profile_in) {
  bc.validate();
  params.validate();
  for (const Bump* b : {&profile_in.v, &profile_in.u, &profile_in.theta}) {
    if (!(b->width > 0.0)) throw Error("interface_initial_state: bump width must be positive");
  }
  if (profile_in.interface_width < 0.0 || profile_in.droplet_radius < 0.0)
    throw Error("interface_initial_state: interface width and droplet radius must be >= 0");
  InitialProfile profile = profile_in;
  profile.interface_width = resolved_interface_width(grid, params, profile_in);

  FlowState s(grid);
  for (int i = 0; i < grid.n_cells; ++i) {
    const double x = grid.x(i);
    s.v[i] = 1.0 + profile.v(x);
    s.u[i] = profile.u(x);
    s.theta[i] = 1.0 + profile.theta(x);
    s.phi[i] = initial_phase(x, bc, params, profile);
  }

  // The analytic profile, evaluated at the ghost centres, must already sit
  // on the far-field values the ghosts are about to receive.
  constexpr double far_tol = 1e-12;
  for (int k = 1; k <= MassGrid::n_ghost; ++k) {
    for (int i : {-k, grid.n_cells - 1 + k}) {
      const double x = grid.x(i);
      const double phi_far = i < 0 ? bc.phi_left : bc.phi_right;
      const double dev = std::max({std::abs(profile.v(x)), std::abs(profile.u(x)), std::abs(profile.theta(x)),
                                   std::abs(initial_phase(x, bc, params, profile) - phi_far)});
      if (dev > far_tol) {
        std::ostringstream os;
        os << "interface_initial_state: initial data differs from the far field by " << dev << " at ghost x = " << x
           << "; widen the domain or narrow the profile";
        throw Error(os.str());
      }
    }
  }

  for (int i = 0; i < grid.n_cells; ++i) {
    if (!(s.v[i] > params.positivity_floor) || !(s.theta[i] > params.positivity_floor)) {
      std::ostringstream os;
      os << "interface_initial_state: initial " << (s.v[i] > params.positivity_floor ? "theta" : "v")
         << " falls to the positivity floor in cell " << i;
      throw Error(os.str());
    }
  }
  apply_far_field(s, bc);
  return s;
}

}  // namespace nsac
