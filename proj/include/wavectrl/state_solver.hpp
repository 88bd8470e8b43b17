#pragma once

#include "wavectrl/problem.hpp"

namespace wavectrl {

// Time-steps the damped bilinear wave equation
//   y_tt + y_t = Lap y + u y + rhs
// on [0, T_h] with a three-level implicit-average scheme. Shared kernel for
// the state, adjoint (via time reversal) and linearized solves.
StateTrajectory solve_wave(const SpatialGrid& g, const TimeGrid& tg, const ScalarField& y0,
                           const ScalarField& y1, const SpaceTimeField& u, const SpaceTimeField& rhs);

StateTrajectory solve_forward(const WaveProblem& p);

// E(t_k) = 1/2 ||v(t_k)||^2 + 1/2 |y(t_k)|_{H^1_0}^2.
double energy(const StateTrajectory& tr, const SpatialGrid& g, int k);

// Checks sup_t (|y|_{H^1}^2 + ||y_t||^2) <= c_{u,T} (|y0|_{H^1}^2 + ||y1||^2 + ||f||_{L2(Q)}^2)
// with c_{u,T} = exp(c_Omega ||u||_{L2(0,T;Linf)}^2) built from the discrete
// Poincare constant.
EnergyReport verify_energy_estimate(const WaveProblem& p, const StateTrajectory& tr);

// Checks sup_t ||y_tt||_{H^-1}^2 <= c'_{u,T} (same data norms) + 3 ||f||_{Linf(0,T;L2)}^2
// with c'_{u,T} = 3 (1 + sqrt(c_Omega) ||u||_{Linf(Q)})^2 exp(c_Omega ||u||_{L2(0,T;Linf)}^2).
// The acceleration is reconstructed from y_tt = Lap y + u y + f - y_t.
EnergyReport verify_accel_estimate(const WaveProblem& p, const StateTrajectory& tr);

// Ratio of the stability estimate for two problems differing only in (u, f):
//   (|dy|_{LinfH1}^2 + |dy_t|_{LinfL2}^2 + |dy_tt|_{LinfH^-1}^2) / (|du|_U^2 + |df|^2)
// Returns 0 when the inputs are identical.
double lipschitz_probe(const WaveProblem& p1, const WaveProblem& p2);

// Relative slack tolerance accepted when flagging an estimate as satisfied.
inline constexpr double kEnergyTolerance = 1e-6;

}  // namespace wavectrl
