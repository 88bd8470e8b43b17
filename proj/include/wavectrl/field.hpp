#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "wavectrl/grid.hpp"

namespace wavectrl {

// Values at the interior points of a SpatialGrid, row-major in 2D.
struct ScalarField {
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(std::size_t n, double fill = 0.0) : values(n, fill) {}
  explicit ScalarField(std::vector<double> v) : values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  double* data() { return values.data(); }
  const double* data() const { return values.data(); }

  void check_grid(const SpatialGrid& g) const {
    if (values.size() != g.point_count()) throw std::invalid_argument("field size does not match grid");
  }

  bool operator==(const ScalarField& o) const = default;
};

// One spatial slice per time node t_0 .. t_m, stored contiguously.
struct SpaceTimeField {
  std::size_t slice_size = 0;
  int slices = 0;  // m + 1
  std::vector<double> values;

  SpaceTimeField() = default;
  SpaceTimeField(const SpatialGrid& g, const TimeGrid& tg, double fill = 0.0)
      : slice_size(g.point_count()),
        slices(tg.node_count()),
        values(slice_size * static_cast<std::size_t>(slices), fill) {}

  std::span<double> slice(int k) {
    return {values.data() + static_cast<std::size_t>(k) * slice_size, slice_size};
  }
  std::span<const double> slice(int k) const {
    return {values.data() + static_cast<std::size_t>(k) * slice_size, slice_size};
  }

  void set_slice(int k, const ScalarField& f) {
    if (f.size() != slice_size) throw std::invalid_argument("slice size mismatch");
    std::copy(f.values.begin(), f.values.end(), slice(k).begin());
  }

  ScalarField slice_field(int k) const {
    auto s = slice(k);
    return ScalarField(std::vector<double>(s.begin(), s.end()));
  }

  void check_grids(const SpatialGrid& g, const TimeGrid& tg) const {
    if (slice_size != g.point_count() || slices != tg.node_count())
      throw std::invalid_argument("space-time field does not match grids");
  }

  bool operator==(const SpaceTimeField& o) const = default;
};

}  // namespace wavectrl
