#pragma once

#include <string>
#include <vector>

#include "wavectrl/adjoint_solver.hpp"
#include "wavectrl/optimizer.hpp"
#include "wavectrl/problem.hpp"

namespace wavectrl {

// CSV writers used by the command-line tool. Values are printed with 17
// significant digits so round-trips are lossless.

// Columns: t, x[, y_coord], value columns (one per field). `stride` keeps
// every stride-th time slice (the last slice is always kept).
void write_spacetime_csv(const std::string& path, const SpatialGrid& g, const TimeGrid& tg,
                         const std::vector<std::string>& names,
                         const std::vector<const SpaceTimeField*>& fields, int stride = 1);

void write_state_csv(const std::string& path, const SpatialGrid& g, const TimeGrid& tg,
                     const StateTrajectory& tr, int stride = 1);

void write_adjoint_csv(const std::string& path, const SpatialGrid& g, const TimeGrid& tg,
                       const AdjointTrajectory& adj, int stride = 1);

void write_iterates_csv(const std::string& path, const std::vector<IterateRecord>& log);

std::string format_double(double v);

}  // namespace wavectrl
