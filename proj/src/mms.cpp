#include "nsac/mms.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nsac/csv.hpp"

namespace nsac {

ManufacturedCase::ManufacturedCase(const SimParams& params, double half_width, double phase, double amplitude,
                                   double t_end)
    : params_(params), half_width_(half_width), phase_(phase), amplitude_(amplitude), t_end_(t_end) {
  params_.validate();
  if (!(half_width > 0.0)) throw Error("manufactured case: half width must be positive");
  if (phase != 1.0 && phase != -1.0) throw Error("manufactured case: phase must be +1 or -1");
  if (!(amplitude >= 0.0 && amplitude <= 0.5)) throw Error("manufactured case: amplitude must lie in [0, 0.5]");
  if (!(t_end > 0.0)) throw Error("manufactured case: end time must be positive");
}

ManufacturedPoint ManufacturedCase::fields(double x, double t) const {
  const double A = amplitude_;
  const double k = std::numbers::pi / half_width_;
  const double s = std::sin(k * x);
  const double c = std::cos(k * x);
  const double E = std::exp(-t);

  ManufacturedPoint m{};
  m.u = {A * s * E, A * k * c * E, -A * k * k * s * E, -A * s * E};
  m.v = m.u;
  m.v.f += 1.0;

  // theta - 1 = A (1 - E) h(x),  h = c (1 + c) / 2
  const double h = 0.5 * c * (1.0 + c);
  const double hx = -0.5 * k * s * (1.0 + 2.0 * c);
  const double hxx = -0.5 * k * k * (c * (1.0 + 2.0 * c) - 2.0 * s * s);
  m.theta = {1.0 + A * (1.0 - E) * h, A * (1.0 - E) * hx, A * (1.0 - E) * hxx, A * E * h};

  // phi = sigma (1 - A (1 + E) b(x)),  b = ((1 + c) / 2)^2
  const double half = 0.5 * (1.0 + c);
  const double b = half * half;
  const double bx = -k * s * half;
  const double bxx = -0.5 * k * k * (c * (1.0 + c) - s * s);
  const double sig = phase_;
  m.phi = {sig * (1.0 - A * (1.0 + E) * b), -sig * A * (1.0 + E) * bx, -sig * A * (1.0 + E) * bxx, sig * A * E * b};
  return m;
}

SourceTerms ManufacturedCase::sources(double x, double t) const {
  const SimParams& p = params_;
  const ManufacturedPoint m = fields(x, t);
  const FieldJet& v = m.v;
  const FieldJet& u = m.u;
  const FieldJet& th = m.theta;
  const FieldJet& ph = m.phi;

  const double q = ph.fx / v.f;
  const double q_x = ph.fxx / v.f - ph.fx * v.fx / (v.f * v.f);
  const double p_x = p.gas_R * (th.fx / v.f - th.f * v.fx / (v.f * v.f)) + p.epsilon * q * q_x;
  const double visc = u.fxx / v.f - u.fx * v.fx / (v.f * v.f);
  const double mu = (ph.f * ph.f * ph.f - ph.f) / p.epsilon - p.epsilon * q_x;
  const double thb = std::pow(th.f, p.beta);
  const double cond = p.beta * std::pow(th.f, p.beta - 1.0) * th.fx * th.fx / v.f + thb * th.fxx / v.f -
                      thb * th.fx * v.fx / (v.f * v.f);

  SourceTerms src{};
  src.v = v.ft - u.fx;
  src.u = u.ft + p_x - p.nu * visc;
  src.phi = ph.ft + v.f * mu;
  src.theta = p.c_v * th.ft + p.gas_R * th.f / v.f * u.fx - p.kappa_tilde * cond - p.nu * u.fx * u.fx / v.f -
              v.f * mu * mu;
  return src;
}

FlowState ManufacturedCase::exact_state(const MassGrid& grid, double t) const {
  FlowState s(grid);
  s.t = t;
  for (int i = -MassGrid::n_ghost; i < grid.n_cells + MassGrid::n_ghost; ++i) {
    const ManufacturedPoint m = fields(grid.x(i), t);
    s.v[i] = m.v.f;
    s.u[i] = m.u.f;
    s.theta[i] = m.theta.f;
    s.phi[i] = m.phi.f;
  }
  return s;
}

Forcing ManufacturedCase::forcing() const {
  Forcing f;
  f.fill_ghosts = [this](FlowState& s) {
    const int n = s.grid.n_cells;
    for (int k = 1; k <= MassGrid::n_ghost; ++k) {
      for (int i : {-k, n - 1 + k}) {
        const ManufacturedPoint m = fields(s.grid.x(i), s.t);
        s.v[i] = m.v.f;
        s.u[i] = m.u.f;
        s.theta[i] = m.theta.f;
        s.phi[i] = m.phi.f;
        s.G[i] = s.t;
      }
    }
  };
  f.add_source = [this](const FlowState& s, Rhs& r) {
    for (int i = 0; i < s.grid.n_cells; ++i) {
      const SourceTerms src = sources(s.grid.x(i), s.t);
      const auto k = static_cast<std::size_t>(i);
      r.dv[k] += src.v;
      r.du[k] += src.u;
      r.dtheta[k] += src.theta / params_.c_v;
      r.dphi[k] += src.phi;
    }
  };
  return f;
}

ManufacturedCase default_case(const SimParams& params, const MassGrid& grid, double amplitude, double t_end) {
  return ManufacturedCase(params, grid.half_width, 1.0, amplitude, t_end);
}

std::vector<ConvergenceRow> convergence_study(const ManufacturedCase& mcase, std::span<const int> resolutions) {
  if (resolutions.size() < 3) throw Error("convergence_study: need at least three resolutions");
  for (std::size_t k = 1; k < resolutions.size(); ++k) {
    if (resolutions[k] != 2 * resolutions[k - 1])
      throw Error("convergence_study: each resolution must double the previous one");
  }

  const BoundaryConfig bc{mcase.phase(), mcase.phase()};
  const Forcing forcing = mcase.forcing();
  std::vector<ConvergenceRow> rows;
  for (int n : resolutions) {
    const MassGrid grid = make_grid(mcase.half_width(), n);
    RunOptions opt;
    opt.t_final = mcase.t_end();
    opt.observe_every_steps = 0;
    FlowState final_state;
    try {
      final_state = run(mcase.exact_state(grid, 0.0), mcase.params(), bc, opt, {}, &forcing);
    } catch (const Error& e) {
      throw Error("convergence_study: resolution N = " + std::to_string(n) + " failed: " + e.what());
    }
    const FlowState exact = mcase.exact_state(grid, final_state.t);

    ConvergenceRow row{n, {}, {}};
    const Field* num[4] = {&final_state.v, &final_state.u, &final_state.theta, &final_state.phi};
    const Field* ref[4] = {&exact.v, &exact.u, &exact.theta, &exact.phi};
    for (int f = 0; f < 4; ++f) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        const double d = (*num[f])[i] - (*ref[f])[i];
        sum += d * d;
      }
      row.error[static_cast<std::size_t>(f)] = std::sqrt(sum * grid.dx);
      row.order[static_cast<std::size_t>(f)] =
          rows.empty() ? std::numeric_limits<double>::quiet_NaN()
                       : std::log2(rows.back().error[static_cast<std::size_t>(f)] / row.error[static_cast<std::size_t>(f)]);
    }
    rows.push_back(row);
  }
  return rows;
}

std::string convergence_csv(std::span<const ConvergenceRow> rows) {
  std::ostringstream os;
  os << "N,err_v,err_u,err_theta,err_phi,order_v,order_u,order_theta,order_phi\n";
  for (const auto& r : rows) {
    os << r.n_cells;
    for (double e : r.error) os << ',' << format_double(e);
    for (double o : r.order) os << ',' << format_double(o);
    os << '\n';
  }
  return os.str();
}

}  // namespace nsac
