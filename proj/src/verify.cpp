#include "wavectrl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "wavectrl/adjoint_solver.hpp"
#include "wavectrl/domain.hpp"
#include "wavectrl/objective.hpp"
#include "wavectrl/optimizer.hpp"
#include "wavectrl/sensitivity.hpp"
#include "wavectrl/state_solver.hpp"

namespace wavectrl {

namespace {

using clock_type = std::chrono::steady_clock;

double elapsed(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

// Smooth random 1D function of (x, t): a small sine series with randomly
// modulated time factors. Mesh-independent by construction, so the same draw
// can be materialized on a coarse and a refined grid.
struct RandomAnalyticField {
  std::array<double, 3> c{};
  std::array<double, 3> a{};
  std::array<double, 3> b{};
  std::array<double, 3> w{};

  static RandomAnalyticField draw(std::mt19937_64& rng, double amp) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    RandomAnalyticField f;
    for (int j = 0; j < 3; ++j) {
      f.c[j] = amp * uni(rng);
      f.a[j] = uni(rng);
      f.b[j] = uni(rng);
      f.w[j] = 0.5 + 2.0 * std::fabs(uni(rng));
    }
    return f;
  }

  double eval(double x, double t) const {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) {
      s += c[j] * std::sin((j + 1) * std::numbers::pi * x) * (a[j] + b[j] * std::cos(w[j] * t));
    }
    return s;
  }

  ScalarField spatial(const SpatialGrid& g) const {
    ScalarField f(g.point_count());
    for (int i = 0; i < g.n[0]; ++i) f[i] = eval(g.coord(0, i), 0.0);
    return f;
  }

  SpaceTimeField materialize(const SpatialGrid& g, const TimeGrid& tg) const {
    SpaceTimeField f(g, tg);
    for (int k = 0; k < tg.node_count(); ++k) {
      auto s = f.slice(k);
      for (int i = 0; i < g.n[0]; ++i) s[i] = eval(g.coord(0, i), tg.node(k));
    }
    return f;
  }
};

SpaceTimeField nodewise_noise(const SpatialGrid& g, const TimeGrid& tg, std::mt19937_64& rng,
                              double amp) {
  std::uniform_real_distribution<double> uni(-amp, amp);
  SpaceTimeField f(g, tg);
  for (auto& v : f.values) v = uni(rng);
  return f;
}

// Spatial noise copied across all time slices (a time-constant control).
SpaceTimeField spatial_noise_constant_in_time(const SpatialGrid& g, const TimeGrid& tg,
                                              std::mt19937_64& rng, double amp) {
  std::uniform_real_distribution<double> uni(-amp, amp);
  ScalarField s(g.point_count());
  for (auto& v : s.values) v = uni(rng);
  SpaceTimeField f(g, tg);
  for (int k = 0; k < tg.node_count(); ++k) f.set_slice(k, s);
  return f;
}

WaveProblem empty_problem(const SpatialGrid& g, const TimeGrid& tg) {
  WaveProblem p;
  p.grid = g;
  p.time = tg;
  p.y0 = ScalarField(g.point_count());
  p.y1 = ScalarField(g.point_count());
  p.f = SpaceTimeField(g, tg);
  p.u = SpaceTimeField(g, tg);
  p.alpha = SpaceTimeField(g, tg, -1.0);
  p.beta = SpaceTimeField(g, tg, 1.0);
  p.yd = SpaceTimeField(g, tg);
  return p;
}

double rel_diff(double a, double b) {
  const double denom = std::max(std::fabs(a), std::fabs(b));
  if (denom == 0.0) return 0.0;
  return std::fabs(a - b) / denom;
}

SpaceTimeField field_difference(const SpaceTimeField& a, const SpaceTimeField& b) {
  SpaceTimeField d = a;
  for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] = a.values[i] - b.values[i];
  return d;
}

// ---------------------------------------------------------------------------
// 1. Manufactured decaying mode.

CheckResult check_manufactured() {
  const auto start = clock_type::now();
  CheckResult res;
  res.name = "manufactured-convergence";
  res.tolerance = 2e-3;

  const double err_base = manufactured_max_error(63, 512);
  const double err_fine = manufactured_max_error(127, 1024);
  const double ratio = err_fine > 0.0 ? err_base / err_fine : 0.0;

  res.measured = err_base;
  res.detail = "refinement ratio " + std::to_string(ratio);
  res.status = (err_base <= 2e-3 && ratio >= 3.2 && ratio <= 4.8) ? CheckStatus::pass
                                                                  : CheckStatus::fail;
  res.seconds = elapsed(start);
  return res;
}

// ---------------------------------------------------------------------------
// 2. Energy and acceleration estimates on randomized admissible scenarios.

WaveProblem random_admissible_problem(std::mt19937_64& rng) {
  const SpatialGrid g = SpatialGrid::interval(1.0, 31);
  const TimeGrid tg(4.0, 128);
  std::uniform_real_distribution<double> gamma_dist(0.5, 2.0);

  WaveProblem p = empty_problem(g, tg);
  p.y0 = RandomAnalyticField::draw(rng, 1.0).spatial(g);
  p.y1 = RandomAnalyticField::draw(rng, 1.0).spatial(g);
  p.f = RandomAnalyticField::draw(rng, 0.5).materialize(g, tg);
  p.u = RandomAnalyticField::draw(rng, 0.25).materialize(g, tg);
  p.yd = RandomAnalyticField::draw(rng, 0.5).materialize(g, tg);
  p.alpha = SpaceTimeField(g, tg, -2.0);
  p.beta = SpaceTimeField(g, tg, 2.0);
  p.gamma = gamma_dist(rng);
  return p;
}

CheckResult check_energy_estimates(std::uint64_t seed) {
  const auto start = clock_type::now();
  CheckResult res;
  res.name = "energy-estimates";
  res.tolerance = 1.0;  // lhs/rhs ratio must stay at or below 1

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  double worst = 0.0;
  bool ok = true;
  for (int s = 0; s < 50; ++s) {
    WaveProblem p = random_admissible_problem(rng);
    StateTrajectory tr = solve_forward(p);
    EnergyReport energy = verify_energy_estimate(p, tr);
    EnergyReport accel = verify_accel_estimate(p, tr);
    ok = ok && energy.satisfied && accel.satisfied;
    if (energy.rhs > 0.0) worst = std::max(worst, energy.lhs / energy.rhs);
    if (accel.rhs > 0.0) worst = std::max(worst, accel.lhs / accel.rhs);
  }
  res.measured = worst;
  res.detail = "50 scenarios, both estimates";
  res.status = ok ? CheckStatus::pass : CheckStatus::fail;
  res.seconds = elapsed(start);
  return res;
}

// ---------------------------------------------------------------------------
// 3. Discrete adjoint duality <S'(u)h, w> = <h y_u, phi_w>.

CheckResult check_adjoint_duality(std::uint64_t seed) {
  const auto start = clock_type::now();
  CheckResult res;
  res.name = "adjoint-duality";
  res.tolerance = 1e-9;

  const SpatialGrid g = SpatialGrid::interval(1.0, 63);
  const TimeGrid tg(8.0, 512);
  std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ULL);

  WaveProblem p = empty_problem(g, tg);
  p.y0 = RandomAnalyticField::draw(rng, 1.0).spatial(g);
  p.y1 = RandomAnalyticField::draw(rng, 0.5).spatial(g);
  p.f = nodewise_noise(g, tg, rng, 0.5);
  // The duality identity is exact for controls frozen in time; time variation
  // introduces an O(dt) commutator in the discrete transpose.
  p.u = spatial_noise_constant_in_time(g, tg, rng, 0.5);

  StateTrajectory tr = solve_forward(p);

  double worst = 0.0;
  for (int s = 0; s < 20; ++s) {
    SpaceTimeField h = nodewise_noise(g, tg, rng, 1.0);
    SpaceTimeField w = nodewise_noise(g, tg, rng, 1.0);

    LinearizedTrajectory z = solve_linearized(p, tr, h);
    const double lhs = spacetime_inner(z.z, w, tg, g);

    AdjointTrajectory phi_w = solve_adjoint_with_source(p, w);
    SpaceTimeField hy(g, tg);
    for (std::size_t i = 0; i < hy.values.size(); ++i) hy.values[i] = h.values[i] * tr.y.values[i];
    const double rhs = spacetime_inner(hy, phi_w.phi, tg, g);

    worst = std::max(worst, rel_diff(lhs, rhs));
  }
  res.measured = worst;
  res.detail = "20 random (h, w) pairs";
  res.status = worst <= res.tolerance ? CheckStatus::pass : CheckStatus::fail;
  res.seconds = elapsed(start);
  return res;
}

// ---------------------------------------------------------------------------
// 4. FD consistency of gradient and Hessian, Hessian symmetry.

WaveProblem derivative_test_problem(int n, int m) {
  Scenario sc;
  sc.n = n;
  sc.steps = m;
  sc.horizon = 8.0;
  sc.y0 = Initializer::sine(1);
  sc.yd = Initializer::gaussian({0.3, 0.0}, 0.1, 0.5);
  sc.u0 = Initializer::decaying_sine(1.0, 1, 0.2);
  sc.alpha = Initializer::constant(-2.0);
  sc.beta = Initializer::constant(2.0);
  return build_problem(sc);
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

double fd_second(const WaveProblem& p, const SpaceTimeField& h, double eps) {
  WaveProblem plus = p;
  WaveProblem minus = p;
  for (std::size_t i = 0; i < h.values.size(); ++i) {
    plus.u.values[i] = p.u.values[i] + eps * h.values[i];
    minus.u.values[i] = p.u.values[i] - eps * h.values[i];
  }
  const double j0 = evaluate_cost(p).j;
  return (evaluate_cost(plus).j - 2.0 * j0 + evaluate_cost(minus).j) / (eps * eps);
}

CheckResult check_derivative_consistency(std::uint64_t seed) {
  const auto start = clock_type::now();
  CheckResult res;
  res.name = "derivative-consistency";
  res.tolerance = 5e-3;

  std::mt19937_64 rng(seed ^ 0x2545f4914f6cdd1dULL);
  RandomAnalyticField hf = RandomAnalyticField::draw(rng, 0.3);
  RandomAnalyticField hf2 = RandomAnalyticField::draw(rng, 0.3);

  // Reference mesh.
  WaveProblem p = derivative_test_problem(63, 512);
  SpaceTimeField h = hf.materialize(p.grid, p.time);
  SpaceTimeField h2 = hf2.materialize(p.grid, p.time);

  const double grad_err = rel_diff(directional_derivative(p, h), fd_directional(p, h, 1e-4));
  const double hess_err = rel_diff(second_derivative(p, h, h), fd_second(p, h, 1e-3));
  const double sym_err = rel_diff(second_derivative(p, h, h2), second_derivative(p, h2, h));

  // One refinement: the gradient mismatch must not grow.
  WaveProblem pf = derivative_test_problem(127, 1024);
  SpaceTimeField hfine = hf.materialize(pf.grid, pf.time);
  const double grad_err_fine =
      rel_diff(directional_derivative(pf, hfine), fd_directional(pf, hfine, 1e-4));

  res.measured = std::max(grad_err, hess_err);
  res.detail = "grad " + std::to_string(grad_err) + " (refined " + std::to_string(grad_err_fine) +
               "), hess " + std::to_string(hess_err) + ", sym " + std::to_string(sym_err);
  const bool ok = grad_err <= 5e-3 && hess_err <= 5e-3 && sym_err <= 1e-12 &&
                  grad_err_fine <= grad_err;
  res.status = ok ? CheckStatus::pass : CheckStatus::fail;
  res.seconds = elapsed(start);
  return res;
}

// ---------------------------------------------------------------------------
// 5-8. Optimizer runs shared by several checks.

WaveProblem coarse_instance() {
  Scenario sc;
  sc.n = 7;
  sc.steps = 16;
  sc.horizon = 2.0;
  sc.y0 = Initializer::sine(1);
  return build_problem(sc);
}

WaveProblem perfect_tracking_instance() {
  Scenario sc;
  sc.n = 63;
  sc.steps = 512;
  sc.horizon = 8.0;
  sc.y0 = Initializer::sine(1);
  sc.yd = Initializer::tracked_free_state();
  sc.u0 = Initializer::constant(0.05);
  return build_problem(sc);
}

struct SharedRuns {
  WaveProblem coarse;
  OptimizeResult coarse_result;
  OptimizerConfig coarse_cfg;
  WaveProblem tracking;
  OptimizeResult tracking_result;
  OptimizerConfig tracking_cfg;

  SharedRuns() : coarse(coarse_instance()), tracking(perfect_tracking_instance()) {
    coarse_result = projected_gradient_solve(coarse, coarse_cfg);
    tracking_cfg.kkt_tol = 1e-7;
    tracking_cfg.rayleigh_samples = 16;
    tracking_result = projected_gradient_solve(tracking, tracking_cfg);
  }
};

CheckResult check_optimizer_oracle(const SharedRuns& runs) {
  const auto start = clock_type::now();
  CheckResult res;
  res.name = "optimizer-oracle";
  res.tolerance = 1e-2;

  SpaceTimeField oracle = brute_force_oracle_solve(runs.coarse, 1e-8, 2000);

  WaveProblem at_oracle = runs.coarse;
  at_oracle.u = oracle;
  const double j_oracle = evaluate_cost(at_oracle).j;
  const double j_rel = rel_diff(runs.coarse_result.final_j, j_oracle);

  SpaceTimeField diff = field_difference(runs.coarse_result.control, oracle);
  const double u_diff = spacetime_norm_l2(diff, runs.coarse.time, runs.coarse.grid);

  res.measured = u_diff;
  res.detail = "J relative difference " + std::to_string(j_rel);
  res.status = (j_rel <= 1e-4 && u_diff <= 1e-2) ? CheckStatus::pass : CheckStatus::fail;
  res.seconds = elapsed(start);
  return res;
}

CheckResult check_kkt_certificate(const SharedRuns& runs, std::uint64_t seed) {
  const auto start = clock_type::now();
  CheckResult res;
  res.name = "kkt-certificate";
  res.tolerance = 1e-6;

  std::mt19937_64 rng(seed ^ 0x853c49e6748fea9bULL);
  double worst = 0.0;
  bool ok = true;

  const std::pair<const WaveProblem*, const OptimizeResult*> cases[] = {
      {&runs.coarse, &runs.coarse_result}, {&runs.tracking, &runs.tracking_result}};
  for (const auto& [problem, result] : cases) {
    WaveProblem at = *problem;
    at.u = result->control;
    FirstOrderData data = first_order_data(at);

    const double kkt = kkt_residual_from(at, data);
    ok = ok && result->converged && kkt <= 1e-6;
    worst = std::max(worst, kkt);

    // Sampled variational inequality <g, w - u> >= -tol (||g|| + 1).
    const double slack = 1e-6 * (data.cost.gradient_norm_l2 + 1.0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int s = 0; s < 100; ++s) {
      SpaceTimeField w(at.grid, at.time);
      for (std::size_t i = 0; i < w.values.size(); ++i) {
        w.values[i] = at.alpha.values[i] + uni(rng) * (at.beta.values[i] - at.alpha.values[i]);
      }
      SpaceTimeField dw = field_difference(w, at.u);
      const double pairing = spacetime_inner(data.gradient.g, dw, at.time, at.grid);
      ok = ok && pairing >= -slack;
      worst = std::max(worst, -pairing / (data.cost.gradient_norm_l2 + 1.0));
    }
  }

  res.measured = worst;
  res.detail = "2 converged runs, 100 feasible directions each";
  res.status = ok ? CheckStatus::pass : CheckStatus::fail;
  res.seconds = elapsed(start);
  return res;
}

CheckResult check_perfect_tracking(const SharedRuns& runs, std::uint64_t seed) {
  const auto start = clock_type::now();
  CheckResult res;
  res.name = "perfect-tracking";
  res.tolerance = 1e-12;

  const double j = runs.tracking_result.final_j;
  const double u_norm =
      spacetime_norm_l2(runs.tracking_result.control, runs.tracking.time, runs.tracking.grid);
  SecondOrderReport second =
      second_order_report(runs.tracking, runs.tracking_result, runs.tracking_cfg, seed);

  res.measured = j;
  res.detail = "||u|| = " + std::to_string(u_norm) +
               ", min Rayleigh quotient = " + std::to_string(second.min_quotient);
  const double gamma = runs.tracking.gamma;
  const bool ok = runs.tracking_result.converged && j <= 1e-12 && u_norm <= 1e-6 &&
                  !second.vacuous && second.min_quotient >= gamma * (1.0 - 1e-6);
  res.status = ok ? CheckStatus::pass : CheckStatus::fail;
  res.seconds = elapsed(start);
  return res;
}

CheckResult check_second_order_necessary(const SharedRuns& runs, std::uint64_t seed) {
  const auto start = clock_type::now();
  CheckResult res;
  res.name = "second-order-necessary";

  double min_quotient = 0.0;
  bool ok = true;
  bool first = true;
  bool any = false;

  const std::tuple<const WaveProblem*, const OptimizeResult*, const OptimizerConfig*> cases[] = {
      {&runs.coarse, &runs.coarse_result, &runs.coarse_cfg},
      {&runs.tracking, &runs.tracking_result, &runs.tracking_cfg}};
  for (const auto& [problem, result, cfg] : cases) {
    SecondOrderReport rep = second_order_report(*problem, *result, *cfg, seed);
    if (rep.vacuous) continue;
    any = true;
    ok = ok && rep.min_quotient >= -1e-6 * problem->gamma;
    if (first || rep.min_quotient < min_quotient) min_quotient = rep.min_quotient;
    first = false;
  }

  res.tolerance = -1e-6;
  res.measured = min_quotient;
  res.detail = "sampled critical-cone Rayleigh quotients";
  if (!any) {
    res.status = CheckStatus::vacuous;
  } else {
    res.status = ok ? CheckStatus::pass : CheckStatus::fail;
  }
  res.seconds = elapsed(start);
  return res;
}

CheckResult check_quadratic_growth(const SharedRuns& runs, std::uint64_t seed) {
  const auto start = clock_type::now();
  CheckResult res;
  res.name = "quadratic-growth";

  const WaveProblem& p = runs.tracking;
  const SpaceTimeField& ubar = runs.tracking_result.control;
  WaveProblem at = p;
  at.u = ubar;
  const double j_bar = evaluate_cost(at).j;
  const double gamma = p.gamma;
  res.tolerance = gamma / 4.0;

  std::mt19937_64 rng(seed ^ 0xda942042e4dd58b5ULL);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> radius(0.01, 0.1);

  double min_ratio = 0.0;
  bool first = true;
  bool ok = true;
  for (int s = 0; s < 50; ++s) {
    SpaceTimeField delta(p.grid, p.time);
    for (auto& v : delta.values) v = uni(rng);
    const double norm = spacetime_norm_l2(delta, p.time, p.grid);
    const double target = radius(rng);
    for (auto& v : delta.values) v *= target / norm;

    WaveProblem trial = p;
    trial.u = ubar;
    for (std::size_t i = 0; i < delta.values.size(); ++i) trial.u.values[i] += delta.values[i];
    trial.u = project(trial.u, p.alpha, p.beta);

    SpaceTimeField d = field_difference(trial.u, ubar);
    const double dn = spacetime_norm_l2(d, p.time, p.grid);
    if (dn == 0.0) continue;

    const double growth = evaluate_cost(trial).j - j_bar;
    const double ratio = growth / (dn * dn);
    ok = ok && growth >= (gamma / 4.0) * dn * dn;
    if (first || ratio < min_ratio) min_ratio = ratio;
    first = false;
  }

  res.measured = min_ratio;
  res.detail = "50 feasible perturbations, radius <= 0.1";
  res.status = ok ? CheckStatus::pass : CheckStatus::fail;
  res.seconds = elapsed(start);
  return res;
}

// ---------------------------------------------------------------------------
// 10. Horizon truncation on the decaying-mode scenario.

Scenario decaying_mode_scenario() {
  Scenario sc;
  sc.n = 63;
  sc.horizon = 16.0;
  sc.steps = 1024;
  sc.y0 = Initializer::sine(1);
  return sc;
}

CheckResult check_horizon_truncation() {
  const auto start = clock_type::now();
  CheckResult res;
  res.name = "horizon-truncation";
  res.tolerance = 1e-6;

  const std::vector<HorizonSweepRow> rows = sweep_horizon(decaying_mode_scenario(), 2, 0);
  const double dj_1 = std::fabs(rows[1].j - rows[0].j);
  const double dj_2 = std::fabs(rows[2].j - rows[1].j);
  const double tail = rows[0].adjoint_tail;

  res.measured = std::max(dj_1, tail);
  res.detail = "|J(2T)-J(T)| = " + std::to_string(dj_1) + ", tail(T) = " + std::to_string(tail) +
               ", |J(4T)-J(2T)| = " + std::to_string(dj_2);
  res.status = (dj_1 <= 1e-6 && tail <= 1e-6 && dj_2 <= dj_1) ? CheckStatus::pass
                                                              : CheckStatus::fail;
  res.seconds = elapsed(start);
  return res;
}

// ---------------------------------------------------------------------------
// 11. Stability-estimate ratios under mesh refinement.

CheckResult check_lipschitz_stability(std::uint64_t seed) {
  const auto start = clock_type::now();
  CheckResult res;
  res.name = "lipschitz-stability";
  res.tolerance = 0.2;

  std::mt19937_64 rng(seed ^ 0xc6a4a7935bd1e995ULL);
  const SpatialGrid g_coarse = SpatialGrid::interval(1.0, 31);
  const TimeGrid tg_coarse(4.0, 128);
  const SpatialGrid g_fine = SpatialGrid::interval(1.0, 63);
  const TimeGrid tg_fine(4.0, 256);

  double worst_variation = 0.0;
  double max_ratio = 0.0;
  bool ok = true;
  for (int s = 0; s < 20; ++s) {
    RandomAnalyticField y0f = RandomAnalyticField::draw(rng, 1.0);
    RandomAnalyticField u1f = RandomAnalyticField::draw(rng, 0.25);
    RandomAnalyticField u2f = RandomAnalyticField::draw(rng, 0.25);
    RandomAnalyticField f1f = RandomAnalyticField::draw(rng, 0.5);
    RandomAnalyticField f2f = RandomAnalyticField::draw(rng, 0.5);

    auto probe_on = [&](const SpatialGrid& g, const TimeGrid& tg) {
      WaveProblem p1 = empty_problem(g, tg);
      p1.alpha = SpaceTimeField(g, tg, -2.0);
      p1.beta = SpaceTimeField(g, tg, 2.0);
      p1.y0 = y0f.spatial(g);
      p1.u = u1f.materialize(g, tg);
      p1.f = f1f.materialize(g, tg);
      WaveProblem p2 = p1;
      p2.u = u2f.materialize(g, tg);
      p2.f = f2f.materialize(g, tg);
      return lipschitz_probe(p1, p2);
    };

    const double r_coarse = probe_on(g_coarse, tg_coarse);
    const double r_fine = probe_on(g_fine, tg_fine);
    if (!(std::isfinite(r_coarse) && std::isfinite(r_fine)) || r_coarse <= 0.0) {
      ok = false;
      continue;
    }
    const double variation = std::fabs(r_fine - r_coarse) / r_coarse;
    worst_variation = std::max(worst_variation, variation);
    max_ratio = std::max(max_ratio, std::max(r_coarse, r_fine));
    ok = ok && variation <= 0.2;
  }

  res.measured = worst_variation;
  res.detail = "max ratio " + std::to_string(max_ratio) + " over 20 pairs";
  res.status = ok ? CheckStatus::pass : CheckStatus::fail;
  res.seconds = elapsed(start);
  return res;
}

}  // namespace

double manufactured_max_error(int n, int m) {
  const SpatialGrid g = SpatialGrid::interval(1.0, n);
  const TimeGrid tg(8.0, m);
  const double pi = std::numbers::pi;
  const double omega = std::sqrt(pi * pi - 0.25);

  WaveProblem p = empty_problem(g, tg);
  for (int i = 0; i < n; ++i) p.y0[i] = std::sin(pi * g.coord(0, i));
  StateTrajectory tr = solve_forward(p);

  double max_err = 0.0;
  ScalarField diff(g.point_count());
  for (int k = 0; k <= m; ++k) {
    const double t = tg.node(k);
    const double amp =
        std::exp(-0.5 * t) * (std::cos(omega * t) + std::sin(omega * t) / (2.0 * omega));
    auto yk = tr.y.slice(k);
    for (int i = 0; i < n; ++i) diff[i] = yk[i] - amp * std::sin(pi * g.coord(0, i));
    max_err = std::max(max_err, norm_l2(diff, g));
  }
  return max_err;
}

SpaceTimeField brute_force_oracle_solve(const WaveProblem& p, double tol, int max_iter) {
  p.validate();
  const std::size_t n_space = p.grid.point_count();
  const int m = p.time.steps;
  const double dt = p.time.dt();
  const double vol = p.grid.cell_volume();

  WaveProblem cur = p;
  cur.u = project(p.u, p.alpha, p.beta);

  auto cost_at = [&](const SpaceTimeField& u) {
    WaveProblem q = cur;
    q.u = u;
    return evaluate_cost(q).j;
  };

  // Central finite differences over every control unknown; the Euclidean
  // partial derivative is converted to the L2(Q) gradient by dividing out the
  // quadrature weight of the node.
  auto fd_gradient = [&](const SpaceTimeField& u) {
    SpaceTimeField g(p.grid, p.time);
    SpaceTimeField work = u;
    const double eps = 1e-6;
    for (int k = 0; k <= m; ++k) {
      const double wt = (k == 0 || k == m) ? 0.5 * dt : dt;
      for (std::size_t i = 0; i < n_space; ++i) {
        const std::size_t idx = static_cast<std::size_t>(k) * n_space + i;
        const double saved = work.values[idx];
        work.values[idx] = saved + eps;
        const double jp = cost_at(work);
        work.values[idx] = saved - eps;
        const double jm = cost_at(work);
        work.values[idx] = saved;
        g.values[idx] = (jp - jm) / (2.0 * eps * wt * vol);
      }
    }
    return g;
  };

  double j_cur = cost_at(cur.u);
  for (int iter = 0; iter < max_iter; ++iter) {
    SpaceTimeField g = fd_gradient(cur.u);

    // Fixed-point residual of the unit-step projected gradient map.
    SpaceTimeField probe = cur.u;
    for (std::size_t i = 0; i < probe.values.size(); ++i) probe.values[i] -= g.values[i];
    probe = project(probe, p.alpha, p.beta);
    SpaceTimeField resid = field_difference(cur.u, probe);
    if (spacetime_norm_l2(resid, p.time, p.grid) <= tol) break;

    double step = 1.0;
    while (true) {
      SpaceTimeField trial = cur.u;
      for (std::size_t i = 0; i < trial.values.size(); ++i) trial.values[i] -= step * g.values[i];
      trial = project(trial, p.alpha, p.beta);

      SpaceTimeField d = field_difference(trial, cur.u);
      const double predicted = spacetime_inner(g, d, p.time, p.grid);
      const double j_trial = cost_at(trial);
      if (j_trial <= j_cur + 1e-4 * predicted) {
        cur.u = trial;
        j_cur = j_trial;
        break;
      }
      step *= 0.5;
      if (step < 1e-14) throw LineSearchStalled("oracle line search stalled");
    }
  }
  return cur.u;
}

std::vector<HorizonSweepRow> sweep_horizon(const Scenario& sc, int factor, int refine) {
  if (factor < 2) throw ValidationError("sweep-horizon factor must be >= 2");
  std::vector<HorizonSweepRow> rows;
  int scale = 1;
  for (int r = 0; r < 3; ++r, scale *= factor) {
    Scenario ext = sc;
    ext.horizon = sc.horizon * scale;
    ext.steps = sc.steps * scale;  // fixed dt
    WaveProblem p = build_problem(ext, refine);

    FirstOrderData data = first_order_data(p);
    HorizonSweepRow row;
    row.horizon = ext.horizon;
    row.j = data.cost.j;
    row.kkt_residual = kkt_residual_from(p, data);
    row.adjoint_tail = data.adjoint.terminal_l2 + data.adjoint.terminal_hm1;
    rows.push_back(row);
  }
  return rows;
}

VerifySuiteReport run_verify_suite(std::uint64_t seed) {
  VerifySuiteReport report;
  report.checks.push_back(check_manufactured());
  report.checks.push_back(check_energy_estimates(seed));
  report.checks.push_back(check_adjoint_duality(seed));
  report.checks.push_back(check_derivative_consistency(seed));

  SharedRuns runs;
  report.checks.push_back(check_optimizer_oracle(runs));
  report.checks.push_back(check_kkt_certificate(runs, seed));
  report.checks.push_back(check_perfect_tracking(runs, seed));
  report.checks.push_back(check_second_order_necessary(runs, seed));
  report.checks.push_back(check_quadratic_growth(runs, seed));

  report.checks.push_back(check_horizon_truncation());
  report.checks.push_back(check_lipschitz_stability(seed));
  return report;
}

}  // namespace wavectrl
