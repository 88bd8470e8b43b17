#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wavectrl/domain.hpp"
#include "wavectrl/objective.hpp"
#include "wavectrl/scenario.hpp"
#include "wavectrl/state_solver.hpp"

using namespace wavectrl;
using std::numbers::pi;

namespace {

WaveProblem small_problem(std::mt19937_64& rng, bool constant_in_time_u) {
  Scenario sc;
  sc.n = 15;
  sc.steps = 64;
  sc.horizon = 2.0;
  sc.y0 = Initializer::sine(1);
  sc.alpha = Initializer::constant(-2.0);
  sc.beta = Initializer::constant(2.0);
  WaveProblem p = build_problem(sc);

  std::uniform_real_distribution<double> uni(-0.5, 0.5);
  for (auto& v : p.yd.values) v = uni(rng);
  if (constant_in_time_u) {
    ScalarField s(p.grid.point_count());
    for (auto& v : s.values) v = uni(rng);
    for (int k = 0; k <= p.time.steps; ++k) p.u.set_slice(k, s);
  } else {
    for (auto& v : p.u.values) v = uni(rng);
  }
  return p;
}

SpaceTimeField random_direction(const WaveProblem& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  SpaceTimeField h(p.grid, p.time);
  for (auto& v : h.values) v = uni(rng);
  return h;
}

double fd_directional(const WaveProblem& p, const SpaceTimeField& h, double eps) {
  WaveProblem plus = p;
  WaveProblem minus = p;
  for (std::size_t i = 0; i < h.values.size(); ++i) {
    plus.u.values[i] = p.u.values[i] + eps * h.values[i];
    minus.u.values[i] = p.u.values[i] - eps * h.values[i];
  }
  return (evaluate_cost(plus).j - evaluate_cost(minus).j) / (2.0 * eps);
}

}  // namespace

TEST_CASE("perfect tracking at u = 0 gives zero cost and zero gradient") {
  Scenario sc;
  sc.n = 31;
  sc.steps = 128;
  sc.horizon = 4.0;
  sc.y0 = Initializer::sine(1);
  sc.yd = Initializer::tracked_free_state();
  WaveProblem p = build_problem(sc);

  CostReport cost = evaluate_cost(p);
  CHECK(cost.j == 0.0);
  CHECK(cost.tracking_part == 0.0);
  CHECK(cost.control_part == 0.0);

  GradientField g = gradient(p);
  for (double v : g.g.values) CHECK(v == 0.0);
}

TEST_CASE("tracking part matches a closed-form quadrature oracle") {
  // free decaying mode against y_d = 0: J = 1/2 int ||y(t)||^2 with
  // ||y(t)||^2 ~ (1/2) e^{-t} (cos wt + sin(wt)/(2w))^2; oracle integrates the
  // closed form with a fine independent trapezoid rule
  Scenario sc;
  sc.n = 63;
  sc.steps = 512;
  sc.horizon = 8.0;
  sc.y0 = Initializer::sine(1);
  WaveProblem p = build_problem(sc);
  CostReport cost = evaluate_cost(p);

  const double omega = std::sqrt(pi * pi - 0.25);
  const int fine = 200000;
  const double dt = sc.horizon / fine;
  double integral = 0.0;
  for (int k = 0; k <= fine; ++k) {
    const double t = k * dt;
    const double amp =
        std::exp(-0.5 * t) * (std::cos(omega * t) + std::sin(omega * t) / (2.0 * omega));
    const double w = (k == 0 || k == fine) ? 0.5 : 1.0;
    integral += w * 0.5 * amp * amp;
  }
  const double oracle = 0.5 * integral * dt;
  CHECK(cost.tracking_part == doctest::Approx(oracle).epsilon(1e-3));
  CHECK(cost.control_part == 0.0);
}

TEST_CASE("control part scales linearly in gamma") {
  std::mt19937_64 rng(1);
  WaveProblem p = small_problem(rng, false);
  CostReport c1 = evaluate_cost(p);
  WaveProblem q = p;
  q.gamma = 2.0 * p.gamma;
  CostReport c2 = evaluate_cost(q);
  CHECK(c2.control_part == doctest::Approx(2.0 * c1.control_part).epsilon(1e-14));
  CHECK(c2.tracking_part == doctest::Approx(c1.tracking_part).epsilon(1e-14));
}

TEST_CASE("adjoint gradient matches finite differences for frozen controls") {
  // the adjoint/linearized pair discretizes the continuous derivative to
  // O(dt^2), so the agreement tolerance reflects the mesh, not roundoff
  std::mt19937_64 rng(2);
  WaveProblem p = small_problem(rng, true);
  SpaceTimeField h = random_direction(p, rng);
  const double adj = directional_derivative(p, h);
  const double fd = fd_directional(p, h, 1e-5);
  CHECK(adj == doctest::Approx(fd).epsilon(2e-3));
}

TEST_CASE("adjoint gradient matches finite differences for time-varying controls") {
  std::mt19937_64 rng(3);
  WaveProblem p = small_problem(rng, false);
  SpaceTimeField h = random_direction(p, rng);
  const double adj = directional_derivative(p, h);
  const double fd = fd_directional(p, h, 1e-5);
  // the discrete transpose picks up an O(dt) commutator here
  CHECK(adj == doctest::Approx(fd).epsilon(5e-3));
}

TEST_CASE("Hessian form matches second finite differences") {
  std::mt19937_64 rng(4);
  WaveProblem p = small_problem(rng, true);
  SpaceTimeField h = random_direction(p, rng);

  const double hess = second_derivative(p, h, h);
  const double eps = 1e-3;
  WaveProblem plus = p;
  WaveProblem minus = p;
  for (std::size_t i = 0; i < h.values.size(); ++i) {
    plus.u.values[i] = p.u.values[i] + eps * h.values[i];
    minus.u.values[i] = p.u.values[i] - eps * h.values[i];
  }
  const double fd =
      (evaluate_cost(plus).j - 2.0 * evaluate_cost(p).j + evaluate_cost(minus).j) / (eps * eps);
  CHECK(hess == doctest::Approx(fd).epsilon(5e-3));
}

TEST_CASE("Hessian form is symmetric to the bit") {
  std::mt19937_64 rng(5);
  WaveProblem p = small_problem(rng, false);
  SpaceTimeField h1 = random_direction(p, rng);
  SpaceTimeField h2 = random_direction(p, rng);
  CHECK(second_derivative(p, h1, h2) == second_derivative(p, h2, h1));
}

TEST_CASE("Hessian coercivity decomposition at a perfect-tracking point") {
  // with phi = 0 the form collapses to ||z||^2 + gamma ||h||^2 >= gamma ||h||^2
  Scenario sc;
  sc.n = 31;
  sc.steps = 128;
  sc.horizon = 4.0;
  sc.y0 = Initializer::sine(1);
  sc.yd = Initializer::tracked_free_state();
  WaveProblem p = build_problem(sc);

  std::mt19937_64 rng(6);
  SpaceTimeField h = random_direction(p, rng);
  const double hn = spacetime_norm_l2(h, p.time, p.grid);
  CHECK(second_derivative(p, h, h) >= p.gamma * hn * hn);
}

TEST_CASE("representation of J' through the assembled gradient field") {
  std::mt19937_64 rng(7);
  WaveProblem p = small_problem(rng, true);
  FirstOrderData data = first_order_data(p);
  SpaceTimeField h = random_direction(p, rng);
  const double via_field = spacetime_inner(data.gradient.g, h, p.time, p.grid);
  CHECK(directional_derivative(p, h) == doctest::Approx(via_field).epsilon(1e-8));
}

TEST_CASE("derivative bound probe reports finite stable ratios") {
  std::mt19937_64 rng(8);
  WaveProblem p = small_problem(rng, false);
  SpaceTimeField u1 = p.u;
  SpaceTimeField u2 = random_direction(p, rng);
  for (auto& v : u2.values) v *= 0.4;
  SpaceTimeField h1 = random_direction(p, rng);
  SpaceTimeField h2 = random_direction(p, rng);

  DerivativeBoundProbe probe = derivative_bound_probe(p, u1, u2, h1, h2);
  CHECK(std::isfinite(probe.first_bound));
  CHECK(std::isfinite(probe.second_bound));
  CHECK(std::isfinite(probe.first_lipschitz));
  CHECK(std::isfinite(probe.second_lipschitz));
  CHECK(probe.first_bound >= 0.0);

  SpaceTimeField zero(p.grid, p.time);
  DerivativeBoundProbe degenerate = derivative_bound_probe(p, u1, u1, zero, zero);
  CHECK(degenerate.first_bound == 0.0);
  CHECK(degenerate.second_bound == 0.0);
  CHECK(degenerate.first_lipschitz == 0.0);
  CHECK(degenerate.second_lipschitz == 0.0);
}
