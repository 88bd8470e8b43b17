#include "wavectrl/sensitivity.hpp"

#include "wavectrl/kernels.hpp"
#include "wavectrl/state_solver.hpp"

namespace wavectrl {

LinearizedTrajectory solve_linearized(const WaveProblem& p, const StateTrajectory& tr,
                                      const SpaceTimeField& h, std::string tag) {
  h.check_grids(p.grid, p.time);
  tr.y.check_grids(p.grid, p.time);

  SpaceTimeField forcing(p.grid, p.time);
  kernels::mul(h.values.data(), tr.y.values.data(), forcing.values.data(), forcing.values.size());

  const ScalarField zero(p.grid.point_count());
  StateTrajectory sol = solve_wave(p.grid, p.time, zero, zero, p.u, forcing);
  return {std::move(sol.y), std::move(sol.v), std::move(tag)};
}

LinearizedTrajectory solve_second_linearized(const WaveProblem& p, const StateTrajectory& tr,
                                             const SpaceTimeField& h1, const LinearizedTrajectory& z1,
                                             const SpaceTimeField& h2, const LinearizedTrajectory& z2,
                                             std::string tag) {
  h1.check_grids(p.grid, p.time);
  h2.check_grids(p.grid, p.time);
  z1.z.check_grids(p.grid, p.time);
  z2.z.check_grids(p.grid, p.time);

  SpaceTimeField forcing(p.grid, p.time);
  kernels::mul(h1.values.data(), z2.z.values.data(), forcing.values.data(), forcing.values.size());
  SpaceTimeField cross(p.grid, p.time);
  kernels::mul(h2.values.data(), z1.z.values.data(), cross.values.data(), cross.values.size());
  kernels::axpy(1.0, cross.values.data(), forcing.values.data(), forcing.values.size());

  const ScalarField zero(p.grid.point_count());
  StateTrajectory sol = solve_wave(p.grid, p.time, zero, zero, p.u, forcing);
  return {std::move(sol.y), std::move(sol.v), std::move(tag)};
}

}  // namespace wavectrl
