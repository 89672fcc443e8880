#pragma once

#include <cmath>
#include <functional>

#include "nsac/core.hpp"

namespace testing {

// Fills every cell, ghosts included, from closed-form functions of x.
inline void fill(nsac::Field& f, const nsac::MassGrid& g, const std::function<double(double)>& fn) {
  for (int i = -nsac::MassGrid::n_ghost; i < g.n_cells + nsac::MassGrid::n_ghost; ++i) f[i] = fn(g.x(i));
}

inline double gauss(double x, double amp, double c, double w) { return amp * std::exp(-((x - c) / w) * ((x - c) / w)); }

// Interface plus bumps, the smooth reference state used across the suite.
inline nsac::FlowState smooth_state(const nsac::MassGrid& g) {
  nsac::FlowState s(g);
  fill(s.phi, g, [](double x) { return std::tanh(x); });
  fill(s.v, g, [](double x) { return 1.0 + gauss(x, 0.3, -3.0, 1.0); });
  fill(s.u, g, [](double x) { return gauss(x, 0.2, 2.0, 1.0); });
  fill(s.theta, g, [](double x) { return 1.0 + gauss(x, 0.3, 0.0, 1.5); });
  return s;
}

}  // namespace testing
