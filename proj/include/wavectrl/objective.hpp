#pragma once

#include "wavectrl/adjoint_solver.hpp"
#include "wavectrl/problem.hpp"
#include "wavectrl/sensitivity.hpp"

namespace wavectrl {

struct CostReport {
  double j = 0.0;
  double tracking_part = 0.0;   // 1/2 ||y_u - y_d||^2_{L2(Q)}
  double control_part = 0.0;    // gamma/2 ||u||^2_{L2(Q)}
  double kkt_residual = 0.0;    // filled by the optimizer
  double gradient_norm_l2 = 0.0;
};

// Pointwise gradient g = phi_u * y_u + gamma * u.
struct GradientField {
  SpaceTimeField g;
};

// Bundle reused by gradient-based callers: state, adjoint and cost in one
// pass.
struct FirstOrderData {
  StateTrajectory state;
  AdjointTrajectory adjoint;
  GradientField gradient;
  CostReport cost;
};

CostReport evaluate_cost(const WaveProblem& p);
CostReport evaluate_cost(const WaveProblem& p, const StateTrajectory& tr);

GradientField gradient(const WaveProblem& p);
FirstOrderData first_order_data(const WaveProblem& p);

// <g, h>_{L2(Q)} via the adjoint representation.
double directional_derivative(const WaveProblem& p, const SpaceTimeField& h);

// J''(u)[h1,h2] = <z1,z2> + <phi, h1 z2 + h2 z1> + gamma <h1,h2>, all L2(Q).
double second_derivative(const WaveProblem& p, const SpaceTimeField& h1, const SpaceTimeField& h2);

// Same, reusing a precomputed state/adjoint pair and linearized solves.
double second_derivative_form(const WaveProblem& p, const AdjointTrajectory& adj,
                              const SpaceTimeField& h1, const LinearizedTrajectory& z1,
                              const SpaceTimeField& h2, const LinearizedTrajectory& z2);

// Measured ratios of the boundedness / Lipschitz estimates for J' and J'':
//   r1 = |J'(u1)[h1]| / |h1|_U
//   r2 = |J''(u1)[h1,h2]| / (|h1|_U |h2|_U)
//   r3 = |J'(u1)[h1] - J'(u2)[h1]| / (|u1-u2|_U |h1|_U)
//   r4 = |J''(u1)[h1,h1] - J''(u2)[h1,h1]| / (|u1-u2|_U |h1|_U^2)
// Zero denominators are reported as ratio 0.
struct DerivativeBoundProbe {
  double first_bound = 0.0;
  double second_bound = 0.0;
  double first_lipschitz = 0.0;
  double second_lipschitz = 0.0;
};

DerivativeBoundProbe derivative_bound_probe(const WaveProblem& p, const SpaceTimeField& u1,
                                            const SpaceTimeField& u2, const SpaceTimeField& h1,
                                            const SpaceTimeField& h2);

}  // namespace wavectrl
