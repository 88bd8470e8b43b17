#pragma once

#include <vector>

#include "wavectrl/errors.hpp"
#include "wavectrl/field.hpp"
#include "wavectrl/grid.hpp"

namespace wavectrl {

// Full scenario data for the tracking problem: grids, initial data, forcing,
// control, box bounds, regularization weight and target trajectory.
struct WaveProblem {
  SpatialGrid grid;
  TimeGrid time;
  ScalarField y0;      // initial displacement
  ScalarField y1;      // initial velocity
  SpaceTimeField f;    // forcing
  SpaceTimeField u;    // bilinear control
  SpaceTimeField alpha;
  SpaceTimeField beta;
  SpaceTimeField yd;   // tracking target
  double gamma = 1.0;

  void validate() const {
    grid.validate();
    time.validate();
    y0.check_grid(grid);
    y1.check_grid(grid);
    f.check_grids(grid, time);
    u.check_grids(grid, time);
    alpha.check_grids(grid, time);
    beta.check_grids(grid, time);
    yd.check_grids(grid, time);
    if (gamma <= 0.0) throw ValidationError("gamma must be positive");
    for (std::size_t i = 0; i < alpha.values.size(); ++i) {
      if (alpha.values[i] > beta.values[i]) throw ValidationError("bounds inverted: alpha > beta");
    }
  }
};

// Displacement and velocity over all time nodes.
struct StateTrajectory {
  SpaceTimeField y;
  SpaceTimeField v;
};

// Outcome of checking one of the a priori energy estimates.
struct EnergyReport {
  std::vector<double> energy;  // E(t_k) per time node
  double lhs = 0.0;            // sup-in-time quantity being bounded
  double constant = 0.0;       // c_{u,T} or c'_{u,T}
  double rhs = 0.0;
  bool satisfied = false;
};

}  // namespace wavectrl
