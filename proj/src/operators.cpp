#include "nsac/operators.hpp"

#include <cmath>

namespace nsac {

Field d1_center(const MassGrid& grid, const Field& f) {
  const int n = grid.n_cells;
  Field out(n, 0.0);
  const double inv2dx = 1.0 / (2.0 * grid.dx);
  for (int i = -1; i <= n; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2dx;
  return out;
}

std::vector<double> face_average(const Field& a, FaceAverage mode) {
  const int n = a.n_cells();
  std::vector<double> face(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) {
    const double l = a[j - 1];
    const double r = a[j];
    face[static_cast<std::size_t>(j)] = mode == FaceAverage::arithmetic ? 0.5 * (l + r) : 2.0 * l * r / (l + r);
  }
  return face;
}

Field diffusion_flux(const MassGrid& grid, std::span<const double> a, const Field& f) {
  const int n = grid.n_cells;
  Field out(n, 0.0);
  const double inv_dx2 = 1.0 / (grid.dx * grid.dx);
  for (int i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(i);
    out[i] = (a[j + 1] * (f[i + 1] - f[i]) - a[j] * (f[i] - f[i - 1])) * inv_dx2;
  }
  return out;
}

namespace {

Field reciprocal(const Field& v) {
  Field r(v.n_cells(), 0.0);
  auto src = v.raw();
  auto dst = r.raw();
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] = 1.0 / src[k];
  return r;
}

}  // namespace

Field chemical_potential(const FlowState& s, const SimParams& p) {
  const int n = s.grid.n_cells;
  const auto inv_v_face = face_average(reciprocal(s.v), p.face_average);
  const Field curv = diffusion_flux(s.grid, inv_v_face, s.phi);
  Field mu(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double f = s.phi[i];
    mu[i] = (f * f * f - f) / p.epsilon - p.epsilon * curv[i];
  }
  return mu;
}

DerivedFields derive_fields(const FlowState& s, const SimParams& p) {
  const MassGrid& g = s.grid;
  const int n = g.n_cells;
  DerivedFields d;

  const Field inv_v = reciprocal(s.v);
  d.visc_face = face_average(inv_v, p.face_average);

  Field cond(n, 0.0);
  auto th = s.theta.raw();
  auto iv = inv_v.raw();
  auto c = cond.raw();
  for (std::size_t k = 0; k < th.size(); ++k) c[k] = std::pow(th[k], p.beta) * iv[k];
  d.kappa_face = face_average(cond, p.face_average);

  const Field curv = diffusion_flux(g, d.visc_face, s.phi);
  d.mu = Field(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double f = s.phi[i];
    d.mu[i] = (f * f * f - f) / p.epsilon - p.epsilon * curv[i];
  }

  const Field phi_x = d1_center(g, s.phi);
  d.phi_x_over_v = Field(n, 0.0);
  d.p_eff = Field(n, 0.0);
  for (int i = -1; i <= n; ++i) {
    const double q = phi_x[i] * inv_v[i];
    d.phi_x_over_v[i] = q;
    d.p_eff[i] = p.gas_R * s.theta[i] * inv_v[i] + 0.5 * p.epsilon * q * q;
  }

  d.u_x = d1_center(g, s.u);
  return d;
}

Rhs semi_discrete_rhs(const FlowState& s, const SimParams& p) {
  check_positivity(s, p.positivity_floor);

  const MassGrid& g = s.grid;
  const int n = g.n_cells;
  const DerivedFields d = derive_fields(s, p);
  const Field visc = diffusion_flux(g, d.visc_face, s.u);
  const Field cond = diffusion_flux(g, d.kappa_face, s.theta);
  const double inv2dx = 1.0 / (2.0 * g.dx);

  Rhs r(n);
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double v = s.v[i];
    const double ux = d.u_x[i];
    const double mu = d.mu[i];
    r.dv[k] = ux;
    r.du[k] = -(d.p_eff[i + 1] - d.p_eff[i - 1]) * inv2dx + p.nu * visc[i];
    r.dphi[k] = -v * mu;
    r.dtheta[k] = (-p.gas_R * s.theta[i] / v * ux + p.kappa_tilde * cond[i] + p.nu * ux * ux / v + v * mu * mu) / p.c_v;
    r.dG[k] = d.p_eff[i];
  }
  return r;
}

Rhs semi_discrete_rhs(const FlowState& state, const SimParams& params, const BoundaryConfig& bc) {
  FlowState s = state;
  apply_far_field(s, bc, params.gas_R);
  return semi_discrete_rhs(s, params);
}

double momentum_face_flux(const FlowState& s, const SimParams& p, const DerivedFields& d, int face) {
  const double visc = p.nu * d.visc_face[static_cast<std::size_t>(face)] * (s.u[face] - s.u[face - 1]) / s.grid.dx;
  return visc - 0.5 * (d.p_eff[face - 1] + d.p_eff[face]);
}

}  // namespace nsac
