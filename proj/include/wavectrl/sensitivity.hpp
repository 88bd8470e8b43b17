#pragma once

#include <string>

#include "wavectrl/problem.hpp"

namespace wavectrl {

// Solution of a linearized state equation, zero initial data by construction.
struct LinearizedTrajectory {
  SpaceTimeField z;
  SpaceTimeField zdot;
  std::string direction_tag;
};

// First derivative of the control-to-state map: z solves
//   z_tt + z_t = Lap z + u z + h y_u,  z(0) = zdot(0) = 0.
LinearizedTrajectory solve_linearized(const WaveProblem& p, const StateTrajectory& tr,
                                      const SpaceTimeField& h, std::string tag = {});

// Second derivative: zeta solves the same operator with forcing
//   h1 z2 + h2 z1, zero initial data, where z_i = S'(u)[h_i].
LinearizedTrajectory solve_second_linearized(const WaveProblem& p, const StateTrajectory& tr,
                                             const SpaceTimeField& h1, const LinearizedTrajectory& z1,
                                             const SpaceTimeField& h2, const LinearizedTrajectory& z2,
                                             std::string tag = {});

}  // namespace wavectrl
