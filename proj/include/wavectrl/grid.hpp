#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

namespace wavectrl {

// Uniform tensor grid of interior points on an interval (1D) or rectangle
// (2D) with homogeneous Dirichlet boundary. Boundary values are implicitly
// zero and are not stored.
struct SpatialGrid {
  int dimension = 1;
  std::array<double, 2> extent{1.0, 1.0};  // domain length per axis
  std::array<int, 2> n{2, 1};              // interior points per axis

  SpatialGrid() = default;

  static SpatialGrid interval(double length, int n_interior) {
    SpatialGrid g;
    g.dimension = 1;
    g.extent = {length, 0.0};
    g.n = {n_interior, 1};
    g.validate();
    return g;
  }

  static SpatialGrid rectangle(double lx, double ly, int nx, int ny) {
    SpatialGrid g;
    g.dimension = 2;
    g.extent = {lx, ly};
    g.n = {nx, ny};
    g.validate();
    return g;
  }

  void validate() const {
    if (dimension != 1 && dimension != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
    for (int a = 0; a < dimension; ++a) {
      if (n[a] < 2) throw std::invalid_argument("grid needs at least 2 interior points per axis");
      if (extent[a] <= 0.0) throw std::invalid_argument("grid extent must be positive");
    }
  }

  double dx(int axis) const { return extent[axis] / (n[axis] + 1); }

  // Product of mesh widths; the quadrature weight of one interior cell.
  double cell_volume() const {
    double v = dx(0);
    if (dimension == 2) v *= dx(1);
    return v;
  }

  std::size_t point_count() const {
    return dimension == 1 ? static_cast<std::size_t>(n[0])
                          : static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]);
  }

  // Coordinate of interior point index along an axis (1-based offset from the boundary).
  double coord(int axis, int idx) const { return (idx + 1) * dx(axis); }

  bool operator==(const SpatialGrid& o) const = default;
};

// Uniform partition of the truncated horizon [0, T_h] into m steps.
struct TimeGrid {
  double horizon = 1.0;
  int steps = 2;

  TimeGrid() = default;
  TimeGrid(double T, int m) : horizon(T), steps(m) { validate(); }

  void validate() const {
    if (horizon <= 0.0) throw std::invalid_argument("time horizon must be positive");
    if (steps < 2) throw std::invalid_argument("time grid needs at least 2 steps");
  }

  double dt() const { return horizon / steps; }
  double node(int k) const { return k * dt(); }
  int node_count() const { return steps + 1; }

  bool operator==(const TimeGrid& o) const = default;
};

}  // namespace wavectrl
