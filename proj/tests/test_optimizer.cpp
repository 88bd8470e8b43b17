#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "wavectrl/domain.hpp"
#include "wavectrl/optimizer.hpp"
#include "wavectrl/scenario.hpp"
#include "wavectrl/state_solver.hpp"

using namespace wavectrl;

namespace {

Scenario coarse_scenario() {
  Scenario sc;
  sc.n = 7;
  sc.steps = 16;
  sc.horizon = 2.0;
  sc.y0 = Initializer::sine(1);
  return sc;
}

SpaceTimeField random_field(const WaveProblem& p, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> uni(lo, hi);
  SpaceTimeField w(p.grid, p.time);
  for (auto& v : w.values) v = uni(rng);
  return w;
}

}  // namespace

TEST_CASE("projection clips pointwise and is idempotent") {
  WaveProblem p = build_problem(coarse_scenario());

  SpaceTimeField low(p.grid, p.time, -10.0);
  SpaceTimeField clipped = project(low, p.alpha, p.beta);
  for (std::size_t i = 0; i < clipped.values.size(); ++i) {
    CHECK(clipped.values[i] == p.alpha.values[i]);
  }

  std::mt19937_64 rng(1);
  SpaceTimeField w = random_field(p, rng, -3.0, 3.0);
  SpaceTimeField once = project(w, p.alpha, p.beta);
  SpaceTimeField twice = project(once, p.alpha, p.beta);
  CHECK(once.values == twice.values);
  for (std::size_t i = 0; i < once.values.size(); ++i) {
    CHECK(once.values[i] >= p.alpha.values[i]);
    CHECK(once.values[i] <= p.beta.values[i]);
  }
}

TEST_CASE("projection is non-expansive in L2(Q)") {
  WaveProblem p = build_problem(coarse_scenario());
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    SpaceTimeField a = random_field(p, rng, -3.0, 3.0);
    SpaceTimeField b = random_field(p, rng, -3.0, 3.0);
    SpaceTimeField pa = project(a, p.alpha, p.beta);
    SpaceTimeField pb = project(b, p.alpha, p.beta);
    SpaceTimeField d(p.grid, p.time), pd(p.grid, p.time);
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      d.values[i] = a.values[i] - b.values[i];
      pd.values[i] = pa.values[i] - pb.values[i];
    }
    CHECK(spacetime_norm_l2(pd, p.time, p.grid) <=
          spacetime_norm_l2(d, p.time, p.grid) * (1.0 + 1e-12));
  }
}

TEST_CASE("projection rejects inverted bounds and shape mismatches") {
  WaveProblem p = build_problem(coarse_scenario());
  SpaceTimeField w(p.grid, p.time);
  SpaceTimeField bad_alpha(p.grid, p.time, 2.0);
  SpaceTimeField bad_beta(p.grid, p.time, -2.0);
  CHECK_THROWS_AS(project(w, bad_alpha, bad_beta), ValidationError);

  SpatialGrid g2 = SpatialGrid::interval(1.0, 3);
  SpaceTimeField small(g2, p.time);
  CHECK_THROWS_AS(project(small, p.alpha, p.beta), ValidationError);
}

TEST_CASE("projected gradient run converges and satisfies the variational inequality") {
  WaveProblem p = build_problem(coarse_scenario());
  OptimizerConfig cfg;
  OptimizeResult res = projected_gradient_solve(p, cfg);

  CHECK(res.converged);
  CHECK(res.final_kkt <= cfg.kkt_tol);
  REQUIRE(!res.log.empty());
  CHECK(res.log.front().iter == 0);
  for (std::size_t k = 1; k < res.log.size(); ++k) {
    CHECK(res.log[k].j <= res.log[k - 1].j * (1.0 + 1e-12));
  }

  // first-order condition <J'(u*), w - u*> >= 0 on random feasible points
  WaveProblem at = p;
  at.u = res.control;
  FirstOrderData data = first_order_data(at);
  const double slack =
      cfg.kkt_tol * (data.cost.gradient_norm_l2 + 1.0);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    SpaceTimeField w = project(random_field(p, rng, -3.0, 3.0), p.alpha, p.beta);
    SpaceTimeField d(p.grid, p.time);
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      d.values[i] = w.values[i] - res.control.values[i];
    }
    CHECK(spacetime_inner(data.gradient.g, d, p.time, p.grid) >= -slack);
  }
}

TEST_CASE("kkt residual is zero at an unconstrained stationary control") {
  // perfect tracking: u = 0 and phi = 0 make -(1/gamma) phi y = 0 = u
  Scenario sc = coarse_scenario();
  sc.yd = Initializer::tracked_free_state();
  WaveProblem p = build_problem(sc);
  CHECK(kkt_residual(p) == 0.0);
}

TEST_CASE("active set classification") {
  WaveProblem p = build_problem(coarse_scenario());
  const double eps = 1e-8;

  SpaceTimeField interior(p.grid, p.time, 0.25);
  ActiveSets sets = active_sets(interior, p.alpha, p.beta, eps);
  CHECK(sets.lower.empty());
  CHECK(sets.upper.empty());

  ActiveSets at_lower = active_sets(p.alpha, p.alpha, p.beta, eps);
  CHECK(at_lower.lower.size() == p.alpha.values.size());
  CHECK(at_lower.upper.empty());

  SpaceTimeField mixed = interior;
  mixed.values[0] = p.alpha.values[0];
  mixed.values[1] = p.beta.values[1];
  ActiveSets m = active_sets(mixed, p.alpha, p.beta, eps);
  REQUIRE(m.lower.size() == 1);
  REQUIRE(m.upper.size() == 1);
  CHECK(m.lower[0] == 0);
  CHECK(m.upper[0] == 1);
}

TEST_CASE("critical directions respect the cone and kill the gradient") {
  WaveProblem p = build_problem(coarse_scenario());
  // synthetic point with a mixed active set, not necessarily stationary
  std::mt19937_64 rng(4);
  p.u = project(random_field(p, rng, -0.5, 0.5), p.alpha, p.beta);
  const std::size_t nvals = p.u.values.size();
  for (std::size_t i = 0; i < nvals / 4; ++i) p.u.values[i] = p.alpha.values[i];
  for (std::size_t i = nvals / 4; i < nvals / 2; ++i) p.u.values[i] = p.beta.values[i];

  FirstOrderData data = first_order_data(p);
  OptimizeResult res;
  res.control = p.u;
  OptimizerConfig cfg;

  for (std::uint64_t seed : {0ULL, 1ULL, 17ULL}) {
    CriticalDirection dir = sample_critical_direction(p, res, data, cfg, seed);
    CHECK(dir.satisfies_sign_conditions);
    CHECK(spacetime_norm_l2(dir.h, p.time, p.grid) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < nvals / 4; ++i) CHECK(dir.h.values[i] >= 0.0);
    for (std::size_t i = nvals / 4; i < nvals / 2; ++i) CHECK(dir.h.values[i] <= 0.0);
    CHECK(dir.gradient_pairing <= 1e-10 * (data.cost.gradient_norm_l2 + 1.0));
  }
}

TEST_CASE("frozen box collapses the critical cone") {
  WaveProblem p = build_problem(coarse_scenario());
  p.alpha = SpaceTimeField(p.grid, p.time, 0.0);
  p.beta = SpaceTimeField(p.grid, p.time, 0.0);
  p.u = SpaceTimeField(p.grid, p.time, 0.0);

  FirstOrderData data = first_order_data(p);
  OptimizeResult res;
  res.control = p.u;
  OptimizerConfig cfg;
  CHECK_THROWS_AS(sample_critical_direction(p, res, data, cfg, 0), DegenerateCone);

  SecondOrderReport rep = second_order_report(p, res, cfg, 0);
  CHECK(rep.vacuous);
  CHECK(rep.samples == 0);
}

TEST_CASE("second-order report certifies coercivity at a perfect-tracking minimizer") {
  Scenario sc;
  sc.n = 15;
  sc.steps = 64;
  sc.horizon = 2.0;
  sc.y0 = Initializer::sine(1);
  sc.yd = Initializer::tracked_free_state();
  WaveProblem p = build_problem(sc);

  OptimizerConfig cfg;
  cfg.rayleigh_samples = 8;
  OptimizeResult res = projected_gradient_solve(p, cfg);
  CHECK(res.converged);
  CHECK(res.final_j <= 1e-12);

  SecondOrderReport rep = second_order_report(p, res, cfg, 42);
  CHECK(!rep.vacuous);
  CHECK(rep.samples == cfg.rayleigh_samples);
  // with phi = 0 the quotient is ||z||^2/||h||^2 + gamma >= gamma
  CHECK(rep.min_quotient >= p.gamma * (1.0 - 1e-6));
  CHECK(rep.necessary_ok);
  CHECK(rep.sufficient_ok);
}

TEST_CASE("optimizer config validation") {
  OptimizerConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.kkt_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = OptimizerConfig{};
  cfg.backtrack = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = OptimizerConfig{};
  cfg.max_iter = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}
