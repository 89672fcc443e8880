#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "nsac/core.hpp"
#include "nsac/error.hpp"
#include "nsac/integrator.hpp"
#include "oracle_values.hpp"

using namespace nsac;

TEST_CASE("make_grid spacing and cell centres") {
  const MassGrid g = make_grid(1.0, 8);
  CHECK(g.dx == 0.25);
  CHECK(g.x(0) == -0.875);
  CHECK(g.x(7) == 0.875);
  CHECK(g.x(-1) == -1.125);
  CHECK(g.n_total() == 12);
  CHECK(make_grid(16.0, 512).dx == 0.0625);
}

TEST_CASE("make_grid rejects bad sizes") {
  CHECK_THROWS_AS(make_grid(1.0, 7), Error);
  CHECK_THROWS_AS(make_grid(1.0, 6), Error);
  CHECK_THROWS_AS(make_grid(0.0, 8), Error);
  CHECK_THROWS_AS(make_grid(-2.0, 8), Error);
}

TEST_CASE("SimParams validation") {
  SimParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.gamma() == 2.0);
  p.cfl = 1.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.epsilon = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.positivity_floor = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("equilibrium states") {
  const MassGrid g = make_grid(4.0, 16);
  for (double phase : {1.0, -1.0}) {
    const FlowState s = equilibrium_state(g, {phase, phase});
    for (int i = -2; i < g.n_cells + 2; ++i) {
      CHECK(s.v[i] == 1.0);
      CHECK(s.u[i] == 0.0);
      CHECK(s.theta[i] == 1.0);
      CHECK(s.phi[i] == phase);
      CHECK(s.G[i] == 0.0);
    }
    CHECK(s.t == 0.0);
  }
  CHECK_THROWS_AS(equilibrium_state(g, {-1.0, 1.0}), Error);
}

TEST_CASE("boundary phases must be unit") {
  CHECK_THROWS_AS((BoundaryConfig{0.5, 1.0}.validate()), Error);
  CHECK_NOTHROW((BoundaryConfig{-1.0, 1.0}.validate()));
}

TEST_CASE("far-field ghosts") {
  const MassGrid g = make_grid(2.0, 8);
  FlowState s(g);
  s.t = 0.75;
  apply_far_field(s, {-1.0, 1.0}, 2.0);
  for (int k = 1; k <= 2; ++k) {
    CHECK(s.phi[-k] == -1.0);
    CHECK(s.phi[g.n_cells - 1 + k] == 1.0);
    CHECK(s.G[-k] == 1.5);
    CHECK(s.u[g.n_cells - 1 + k] == 0.0);
  }
}

TEST_CASE("zero perturbation with equal phases equals equilibrium") {
  const MassGrid g = make_grid(16.0, 64);
  const SimParams p;
  const FlowState s = interface_initial_state(g, {1.0, 1.0}, p, {});
  const FlowState e = equilibrium_state(g, {1.0, 1.0});
  CHECK(s.v == e.v);
  CHECK(s.u == e.u);
  CHECK(s.theta == e.theta);
  CHECK(s.phi == e.phi);
  CHECK(s.G == e.G);
}

TEST_CASE("tanh interface reaches the far field at the ghosts when L/w >= 15") {
  const MassGrid g = make_grid(16.0, 256);
  SimParams p;
  InitialProfile prof;
  prof.interface_width = 16.0 / 15.0;
  const FlowState s = interface_initial_state(g, {-1.0, 1.0}, p, prof);
  for (int k = 1; k <= 2; ++k) {
    CHECK(std::abs(initial_phase(g.x(-k), {-1.0, 1.0}, p, prof) + 1.0) <= 1e-12);
    CHECK(std::abs(initial_phase(g.x(g.n_cells - 1 + k), {-1.0, 1.0}, p, prof) - 1.0) <= 1e-12);
  }
  for (double phi : s.phi.interior()) CHECK(std::abs(phi) <= 1.0);

  prof.interface_width = 2.0;
  CHECK_THROWS_AS(interface_initial_state(g, {-1.0, 1.0}, p, prof), Error);
}

TEST_CASE("automatic interface width") {
  const MassGrid g = make_grid(16.0, 64);
  SimParams p;
  CHECK(resolved_interface_width(g, p, {}) == doctest::Approx(16.0 / 15.0));
  p.epsilon = 0.5;
  CHECK(resolved_interface_width(g, p, {}) == doctest::Approx(std::sqrt(2.0) * 0.5));
  InitialProfile prof;
  prof.interface_width = 0.3;
  CHECK(resolved_interface_width(g, p, prof) == 0.3);
}

TEST_CASE("bump minimum matches the independent evaluation") {
  const MassGrid g = make_grid(16.0, 512);
  const SimParams p;
  InitialProfile prof;
  prof.theta = {-0.5, 0.0, 1.0};
  FlowState s = interface_initial_state(g, {1.0, 1.0}, p, prof);
  auto th = s.theta.interior();
  CHECK(*std::min_element(th.begin(), th.end()) == doctest::Approx(oracle::min_theta0_amp_m05_w1_c0).epsilon(1e-15));
  prof.theta = {-0.5, 2.0, 1.5};
  s = interface_initial_state(g, {1.0, 1.0}, p, prof);
  th = s.theta.interior();
  CHECK(*std::min_element(th.begin(), th.end()) == doctest::Approx(oracle::min_theta0_amp_m05_w15_c2).epsilon(1e-15));
}

TEST_CASE("initial data below the positivity floor is rejected") {
  const MassGrid g = make_grid(16.0, 128);
  InitialProfile prof;
  prof.v = {-1.5, 0.0, 1.0};
  CHECK_THROWS_AS(interface_initial_state(g, {1.0, 1.0}, {}, prof), Error);
  prof = {};
  prof.theta.width = 0.0;
  CHECK_THROWS_AS(interface_initial_state(g, {1.0, 1.0}, {}, prof), Error);
}

TEST_CASE("droplet stays within the pure phases") {
  const MassGrid g = make_grid(16.0, 256);
  InitialProfile prof;
  prof.droplet_radius = 3.0;
  const FlowState s = interface_initial_state(g, {1.0, 1.0}, {}, prof);
  CHECK(s.phi[g.n_cells / 2] < -0.9);
  for (double phi : s.phi.interior()) CHECK(std::abs(phi) <= 1.0);
}

TEST_CASE("check_positivity names the cell and field") {
  const MassGrid g = make_grid(2.0, 8);
  FlowState s(g);
  s.theta[5] = -0.1;
  try {
    check_positivity(s, 1e-10);
    FAIL("expected a positivity error");
  } catch (const PositivityError& e) {
    CHECK(e.cell() == 5);
    CHECK(e.field() == "theta");
    CHECK(e.value() == -0.1);
    CHECK(std::string(e.what()).find("theta") != std::string::npos);
  }
  s.theta[5] = 1.0;
  s.v[2] = std::nan("");
  CHECK_THROWS_AS(check_positivity(s, 1e-10), PositivityError);
}

TEST_CASE("phase reflection commutes with stepping") {
  const MassGrid g = make_grid(8.0, 64);
  const SimParams p;
  FlowState s = testing::smooth_state(g);
  FlowState r = s;
  for (int i = -2; i < g.n_cells + 2; ++i) r.phi[i] = -s.phi[i];
  const FlowState a = heun_step(s, p, {-1.0, 1.0}, 1e-3);
  const FlowState b = heun_step(r, p, {1.0, -1.0}, 1e-3);
  for (int i = 0; i < g.n_cells; ++i) {
    CHECK(b.phi[i] == -a.phi[i]);
    CHECK(b.v[i] == a.v[i]);
    CHECK(b.u[i] == a.u[i]);
    CHECK(b.theta[i] == a.theta[i]);
  }
}

TEST_CASE("randomized admissible initial data satisfy the state invariants") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    SimParams p;
    p.epsilon = 0.3 + unit(rng);
    p.beta = 0.5 + 2.0 * unit(rng);
    const MassGrid g = make_grid(16.0, 64 << (trial % 3));
    InitialProfile prof;
    prof.interface_center = -2.0 + 4.0 * unit(rng);
    prof.v = {-0.5 + unit(rng), -4.0 + 8.0 * unit(rng), 0.5 + unit(rng)};
    prof.u = {-0.5 + unit(rng), -4.0 + 8.0 * unit(rng), 0.5 + unit(rng)};
    prof.theta = {-0.5 + unit(rng), -4.0 + 8.0 * unit(rng), 0.5 + unit(rng)};
    const BoundaryConfig bc{unit(rng) < 0.5 ? -1.0 : 1.0, unit(rng) < 0.5 ? -1.0 : 1.0};
    const FlowState s = interface_initial_state(g, bc, p, prof);
    for (int k = 1; k <= 2; ++k) {
      CHECK(s.v[-k] == 1.0);
      CHECK(s.theta[g.n_cells - 1 + k] == 1.0);
      CHECK(s.phi[-k] == bc.phi_left);
      CHECK(s.phi[g.n_cells - 1 + k] == bc.phi_right);
    }
    for (int i = 0; i < g.n_cells; ++i) {
      CHECK(s.v[i] > p.positivity_floor);
      CHECK(s.theta[i] > p.positivity_floor);
      CHECK(std::abs(s.phi[i]) <= 1.0);
      CHECK(s.G[i] == 0.0);
    }
  }
}
