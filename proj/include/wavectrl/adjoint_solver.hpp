#pragma once

#include "wavectrl/problem.hpp"

namespace wavectrl {

// Adjoint trajectory on the truncated horizon; phi(T_h) = phidot(T_h) = 0 by
// construction, the committed truncation error is certified separately.
struct AdjointTrajectory {
  SpaceTimeField phi;
  SpaceTimeField phidot;
  double terminal_l2 = 0.0;    // ||phi(T_h)||_{L2}
  double terminal_hm1 = 0.0;   // ||phidot(T_h)||_{H^-1}
};

// Solves phi_tt - phi_t = Lap phi + u phi + source backwards in time by the
// change of variable s = T_h - t, which turns it into the forward damped
// equation with time-reversed coefficients and zero initial data.
AdjointTrajectory solve_adjoint_with_source(const WaveProblem& p, const SpaceTimeField& source);

// Standard adjoint: source = y_u - y_d.
AdjointTrajectory solve_adjoint(const WaveProblem& p, const StateTrajectory& tr);

struct DecayCertificate {
  double horizon = 0.0;           // base T_h
  double extended_horizon = 0.0;  // factor * T_h
  double sup_difference = 0.0;    // sup_t ||phi_T(t) - phi_fT(t)||_{L2} over [0, T_h]
  double tail_l2 = 0.0;           // ||phi_fT(T_h)||_{L2}
  double tail_hm1 = 0.0;          // ||phidot_fT(T_h)||_{H^-1}
};

// Compares the adjoint at horizons T_h and factor*T_h (same dt) and measures
// the tail of the extended solve at t = T_h.
DecayCertificate decay_certificate(const WaveProblem& p, int factor);

}  // namespace wavectrl
