#pragma once

// Second-order cell-centred discretisation of
//
//   v_t     = u_x
//   u_t     = -(R theta/v + (eps/2)(phi_x/v)^2)_x + nu (u_x/v)_x
//   phi_t   = -v mu,   mu = (phi^3 - phi)/eps - eps (phi_x/v)_x
//   c_v theta_t = -(R theta/v) u_x + kappa_tilde (theta^beta theta_x/v)_x + nu u_x^2/v + v mu^2
//
// Every second-derivative term uses the same flux-form operator, so interior
// sums telescope to boundary fluxes.

#include <span>
#include <vector>

#include "nsac/core.hpp"

namespace nsac {

struct DerivedFields {
  Field mu;            // interior
  Field p_eff;         // interior and first ghost layer
  Field phi_x_over_v;  // interior and first ghost layer
  Field u_x;           // interior
  // Face j sits between cells j-1 and j, j = 0..N.
  std::vector<double> kappa_face;  // mean of theta^beta / v
  std::vector<double> visc_face;   // mean of 1 / v
};

struct Rhs {
  std::vector<double> dv;
  std::vector<double> du;
  std::vector<double> dtheta;
  std::vector<double> dphi;
  std::vector<double> dG;

  explicit Rhs(int n = 0)
      : dv(static_cast<std::size_t>(n)), du(dv.size()), dtheta(dv.size()), dphi(dv.size()), dG(dv.size()) {}
};

/// (f[i+1] - f[i-1]) / (2 dx) on the interior and on the first ghost layer.
/// The outermost ghosts of the result are zero.
Field d1_center(const MassGrid& grid, const Field& f);

/// Face values of a cell coefficient, arithmetic or harmonic mean of the two
/// neighbouring cells. Returns N+1 values.
std::vector<double> face_average(const Field& coefficient, FaceAverage mode);

/// [a_{i+1/2}(f_{i+1} - f_i) - a_{i-1/2}(f_i - f_{i-1})] / dx^2 on the interior.
Field diffusion_flux(const MassGrid& grid, std::span<const double> face_coefficient, const Field& f);

/// mu = (phi^3 - phi)/eps - eps (phi_x/v)_x, with the second term in flux form
/// using face values of 1/v. Requires populated ghosts.
Field chemical_potential(const FlowState& state, const SimParams& params);

DerivedFields derive_fields(const FlowState& state, const SimParams& params);

/// Time derivatives of (v, u, theta, phi, G). Ghost cells must already hold
/// boundary data. Throws PositivityError when v or theta is not above the
/// floor in some interior cell.
Rhs semi_discrete_rhs(const FlowState& state, const SimParams& params);

/// Same, after filling the ghosts of a copy from `bc`.
Rhs semi_discrete_rhs(const FlowState& state, const SimParams& params, const BoundaryConfig& bc);

/// Face flux entering the momentum balance at face j (between cells j-1 and j):
/// nu * visc_face * (u_j - u_{j-1})/dx - (p_{j-1} + p_j)/2. The interior sum of
/// du * dx equals flux(N) - flux(0).
double momentum_face_flux(const FlowState& state, const SimParams& params, const DerivedFields& derived, int face);

}  // namespace nsac
