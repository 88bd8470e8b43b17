#pragma once

#include <cstdint>
#include <vector>

#include "wavectrl/objective.hpp"
#include "wavectrl/problem.hpp"

namespace wavectrl {

struct OptimizerConfig {
  int max_iter = 500;
  double kkt_tol = 1e-6;
  double armijo_slope = 1e-4;    // sigma in (0,1)
  double backtrack = 0.5;        // step shrink factor in (0,1)
  double initial_step = 1.0;
  double active_set_eps = 1e-8;
  int rayleigh_samples = 64;
  int rayleigh_power_iters = 50;

  void validate() const {
    if (max_iter < 1) throw ValidationError("max_iter must be >= 1");
    if (kkt_tol <= 0.0) throw ValidationError("kkt_tol must be positive");
    if (armijo_slope <= 0.0 || armijo_slope >= 1.0) throw ValidationError("armijo_slope must be in (0,1)");
    if (backtrack <= 0.0 || backtrack >= 1.0) throw ValidationError("backtrack must be in (0,1)");
    if (initial_step <= 0.0) throw ValidationError("initial_step must be positive");
    if (active_set_eps <= 0.0) throw ValidationError("active_set_eps must be positive");
    if (rayleigh_samples < 1 || rayleigh_power_iters < 0) throw ValidationError("bad rayleigh settings");
  }

  bool operator==(const OptimizerConfig&) const = default;
};

struct IterateRecord {
  int iter = 0;
  double j = 0.0;
  double tracking_part = 0.0;
  double control_part = 0.0;
  double grad_norm = 0.0;
  double kkt_residual = 0.0;
  double step = 0.0;
  int backtracks = 0;
};

struct ActiveSets {
  std::vector<std::size_t> lower;  // indices with |u - alpha| <= eps
  std::vector<std::size_t> upper;  // indices with |u - beta| <= eps
};

struct OptimizeResult {
  SpaceTimeField control;
  std::vector<IterateRecord> log;
  ActiveSets active;
  bool converged = false;
  double final_j = 0.0;
  double final_kkt = 0.0;
};

struct CriticalDirection {
  SpaceTimeField h;  // normalized to ||h||_{L2(Q)} = 1
  bool satisfies_sign_conditions = false;
  double gradient_pairing = 0.0;  // |<g, h>|
};

struct SecondOrderReport {
  double min_quotient = 0.0;  // sampled lower bound on J''[h,h]/||h||^2 over the critical cone
  int min_direction = -1;
  int samples = 0;
  bool vacuous = false;        // cone degenerate, nothing to check
  bool necessary_ok = false;   // min_quotient >= -1e-6 * gamma
  bool sufficient_ok = false;  // min_quotient strictly positive
};

// Pointwise clip of w to [alpha, beta].
SpaceTimeField project(const SpaceTimeField& w, const SpaceTimeField& alpha,
                       const SpaceTimeField& beta);

// ||u - Pi(-(1/gamma) phi y)||_{L2(Q)} from a precomputed state/adjoint pair.
double kkt_residual_from(const WaveProblem& p, const FirstOrderData& data);
double kkt_residual(const WaveProblem& p);

OptimizeResult projected_gradient_solve(const WaveProblem& p, const OptimizerConfig& cfg);

ActiveSets active_sets(const SpaceTimeField& u, const SpaceTimeField& alpha,
                       const SpaceTimeField& beta, double eps);

// Draws a random critical-cone direction at a converged result: zero on
// strongly active indices, sign-constrained on the active sets, gradient
// component removed on the free indices, unit L2(Q) norm.
CriticalDirection sample_critical_direction(const WaveProblem& p, const OptimizeResult& result,
                                            const FirstOrderData& data, const OptimizerConfig& cfg,
                                            std::uint64_t seed);

// Minimum sampled Rayleigh quotient of J'' over critical directions.
SecondOrderReport second_order_report(const WaveProblem& p, const OptimizeResult& result,
                                      const OptimizerConfig& cfg, std::uint64_t seed);

}  // namespace wavectrl
