#include "wavectrl/optimizer.hpp"

#include <cmath>
#include <random>

#include "wavectrl/domain.hpp"
#include "wavectrl/kernels.hpp"
#include "wavectrl/state_solver.hpp"

namespace wavectrl {

SpaceTimeField project(const SpaceTimeField& w, const SpaceTimeField& alpha,
                       const SpaceTimeField& beta) {
  if (w.values.size() != alpha.values.size() || w.values.size() != beta.values.size()) {
    throw ValidationError("project: field shape mismatch");
  }
  for (std::size_t i = 0; i < alpha.values.size(); ++i) {
    if (alpha.values[i] > beta.values[i]) throw ValidationError("project: bounds inverted");
  }
  SpaceTimeField out = w;
  kernels::clamp(w.values.data(), alpha.values.data(), beta.values.data(), out.values.data(),
                 w.values.size());
  return out;
}

namespace {

// Projection-formula argument -(1/gamma) phi y.
SpaceTimeField projection_argument(const WaveProblem& p, const FirstOrderData& data) {
  SpaceTimeField q(p.grid, p.time);
  kernels::mul(data.adjoint.phi.values.data(), data.state.y.values.data(), q.values.data(),
               q.values.size());
  for (auto& v : q.values) v *= -1.0 / p.gamma;
  return q;
}

}  // namespace

double kkt_residual_from(const WaveProblem& p, const FirstOrderData& data) {
  SpaceTimeField q = projection_argument(p, data);
  SpaceTimeField pi = project(q, p.alpha, p.beta);
  SpaceTimeField diff(p.grid, p.time);
  for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] = p.u.values[i] - pi.values[i];
  return spacetime_norm_l2(diff, p.time, p.grid);
}

double kkt_residual(const WaveProblem& p) {
  return kkt_residual_from(p, first_order_data(p));
}

OptimizeResult projected_gradient_solve(const WaveProblem& p, const OptimizerConfig& cfg) {
  cfg.validate();
  p.validate();

  WaveProblem cur = p;
  cur.u = project(p.u, p.alpha, p.beta);

  FirstOrderData data = first_order_data(cur);
  OptimizeResult res;

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    const double kkt = kkt_residual_from(cur, data);

    IterateRecord rec;
    rec.iter = iter;
    rec.j = data.cost.j;
    rec.tracking_part = data.cost.tracking_part;
    rec.control_part = data.cost.control_part;
    rec.grad_norm = data.cost.gradient_norm_l2;
    rec.kkt_residual = kkt;

    if (kkt <= cfg.kkt_tol) {
      res.log.push_back(rec);
      res.converged = true;
      break;
    }

    double step = cfg.initial_step;
    int backtracks = 0;
    WaveProblem trial = cur;
    double trial_j = 0.0;
    StateTrajectory trial_state;
    while (true) {
      SpaceTimeField candidate = cur.u;
      kernels::axpy(-step, data.gradient.g.values.data(), candidate.values.data(),
                    candidate.values.size());
      trial.u = project(candidate, p.alpha, p.beta);

      SpaceTimeField delta(p.grid, p.time);
      for (std::size_t i = 0; i < delta.values.size(); ++i) {
        delta.values[i] = trial.u.values[i] - cur.u.values[i];
      }
      const double predicted = spacetime_inner(data.gradient.g, delta, p.time, p.grid);

      trial_state = solve_forward(trial);
      trial_j = evaluate_cost(trial, trial_state).j;
      if (trial_j <= data.cost.j + cfg.armijo_slope * predicted) break;

      step *= cfg.backtrack;
      ++backtracks;
      if (step < 1e-14) throw LineSearchStalled("Armijo step size underflow");
    }

    rec.step = step;
    rec.backtracks = backtracks;
    res.log.push_back(rec);

    cur.u = trial.u;
    data.state = std::move(trial_state);
    data.adjoint = solve_adjoint(cur, data.state);
    data.gradient.g = SpaceTimeField(p.grid, p.time);
    kernels::mul(data.adjoint.phi.values.data(), data.state.y.values.data(),
                 data.gradient.g.values.data(), data.gradient.g.values.size());
    kernels::axpy(cur.gamma, cur.u.values.data(), data.gradient.g.values.data(),
                  data.gradient.g.values.size());
    data.cost = evaluate_cost(cur, data.state);
    data.cost.gradient_norm_l2 = spacetime_norm_l2(data.gradient.g, p.time, p.grid);
  }

  if (!res.converged) {
    // max_iter reached: log the final point.
    IterateRecord rec;
    rec.iter = static_cast<int>(res.log.size());
    rec.j = data.cost.j;
    rec.tracking_part = data.cost.tracking_part;
    rec.control_part = data.cost.control_part;
    rec.grad_norm = data.cost.gradient_norm_l2;
    rec.kkt_residual = kkt_residual_from(cur, data);
    res.log.push_back(rec);
  }

  res.control = cur.u;
  res.final_j = data.cost.j;
  res.final_kkt = res.log.back().kkt_residual;
  res.active = active_sets(cur.u, p.alpha, p.beta, cfg.active_set_eps);
  return res;
}

ActiveSets active_sets(const SpaceTimeField& u, const SpaceTimeField& alpha,
                       const SpaceTimeField& beta, double eps) {
  ActiveSets sets;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    if (std::fabs(u.values[i] - alpha.values[i]) <= eps) sets.lower.push_back(i);
    if (std::fabs(u.values[i] - beta.values[i]) <= eps) sets.upper.push_back(i);
  }
  return sets;
}

CriticalDirection sample_critical_direction(const WaveProblem& p, const OptimizeResult& result,
                                            const FirstOrderData& data, const OptimizerConfig& cfg,
                                            std::uint64_t seed) {
  const double eps = cfg.active_set_eps;
  const std::size_t n = result.control.values.size();
  SpaceTimeField q = projection_argument(p, data);

  for (int attempt = 0; attempt < 10; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
    std::normal_distribution<double> normal(0.0, 1.0);

    SpaceTimeField h(p.grid, p.time);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = p.alpha.values[i];
      const double b = p.beta.values[i];
      const double u = result.control.values[i];
      double value = normal(rng);

      if (b - a <= 2.0 * eps) {
        value = 0.0;  // frozen component (alpha == beta up to eps)
      } else if (std::fabs(u - a) <= eps) {
        // lower active: strongly active components are removed from the cone,
        // weakly active ones keep the admissible sign
        value = q.values[i] < a - eps ? 0.0 : std::fabs(value);
      } else if (std::fabs(u - b) <= eps) {
        value = q.values[i] > b + eps ? 0.0 : -std::fabs(value);
      }
      h.values[i] = value;
    }

    // Remove the gradient component using a correction supported on the free
    // indices only, so the sign conditions stay intact.
    const double gnorm = spacetime_norm_l2(data.gradient.g, p.time, p.grid);
    if (gnorm > eps) {
      SpaceTimeField g_free = data.gradient.g;
      for (std::size_t i = 0; i < n; ++i) {
        const double a = p.alpha.values[i];
        const double b = p.beta.values[i];
        const double u = result.control.values[i];
        if (std::fabs(u - a) <= eps || std::fabs(u - b) <= eps) g_free.values[i] = 0.0;
      }
      const double denom = spacetime_inner(data.gradient.g, g_free, p.time, p.grid);
      if (denom > 0.0) {
        const double coeff = spacetime_inner(data.gradient.g, h, p.time, p.grid) / denom;
        kernels::axpy(-coeff, g_free.values.data(), h.values.data(), n);
      }
    }

    const double norm = spacetime_norm_l2(h, p.time, p.grid);
    if (norm <= 1e-14) continue;
    for (auto& v : h.values) v /= norm;

    CriticalDirection dir;
    dir.gradient_pairing = std::fabs(spacetime_inner(data.gradient.g, h, p.time, p.grid));
    dir.satisfies_sign_conditions = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = p.alpha.values[i];
      const double b = p.beta.values[i];
      const double u = result.control.values[i];
      if (std::fabs(u - a) <= eps && h.values[i] < 0.0) dir.satisfies_sign_conditions = false;
      if (std::fabs(u - b) <= eps && h.values[i] > 0.0) dir.satisfies_sign_conditions = false;
    }
    dir.h = std::move(h);
    return dir;
  }
  throw DegenerateCone("critical cone collapsed to {0} after 10 sampling attempts");
}

SecondOrderReport second_order_report(const WaveProblem& p, const OptimizeResult& result,
                                      const OptimizerConfig& cfg, std::uint64_t seed) {
  WaveProblem at = p;
  at.u = result.control;
  FirstOrderData data = first_order_data(at);

  SecondOrderReport rep;
  try {
    for (int s = 0; s < cfg.rayleigh_samples; ++s) {
      CriticalDirection dir =
          sample_critical_direction(at, result, data, cfg, seed + 1000003ULL * s);
      LinearizedTrajectory z = solve_linearized(at, data.state, dir.h);
      const double quotient = second_derivative_form(at, data.adjoint, dir.h, z, dir.h, z);
      if (rep.samples == 0 || quotient < rep.min_quotient) {
        rep.min_quotient = quotient;
        rep.min_direction = s;
      }
      ++rep.samples;
    }
  } catch (const DegenerateCone&) {
    if (rep.samples == 0) {
      rep.vacuous = true;
      return rep;
    }
  }

  rep.necessary_ok = rep.min_quotient >= -1e-6 * p.gamma;
  rep.sufficient_ok = rep.min_quotient > 0.0;
  return rep;
}

}  // namespace wavectrl
