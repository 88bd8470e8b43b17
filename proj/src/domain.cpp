#include "wavectrl/domain.hpp"

#include <cmath>
#include <numbers>

#include "wavectrl/banded.hpp"
#include "wavectrl/kernels.hpp"

namespace wavectrl {

ScalarField laplacian_apply(const ScalarField& v, const SpatialGrid& g) {
  v.check_grid(g);
  const int nx = g.n[0];
  const int ny = g.dimension == 2 ? g.n[1] : 1;
  const double ix2 = 1.0 / (g.dx(0) * g.dx(0));
  const double iy2 = g.dimension == 2 ? 1.0 / (g.dx(1) * g.dx(1)) : 0.0;

  ScalarField out(v.size());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int p = j * nx + i;
      double left = i > 0 ? v[p - 1] : 0.0;
      double right = i + 1 < nx ? v[p + 1] : 0.0;
      double s = (left - 2.0 * v[p] + right) * ix2;
      if (g.dimension == 2) {
        double down = j > 0 ? v[p - nx] : 0.0;
        double up = j + 1 < ny ? v[p + nx] : 0.0;
        s += (down - 2.0 * v[p] + up) * iy2;
      }
      out[p] = s;
    }
  }
  return out;
}

double inner_l2(const ScalarField& a, const ScalarField& b, const SpatialGrid& g) {
  a.check_grid(g);
  b.check_grid(g);
  return kernels::dot(a.data(), b.data(), a.size()) * g.cell_volume();
}

double norm_l2(const ScalarField& v, const SpatialGrid& g) {
  v.check_grid(g);
  return std::sqrt(kernels::sum_squares(v.data(), v.size()) * g.cell_volume());
}

double norm_h10(const ScalarField& v, const SpatialGrid& g) {
  v.check_grid(g);
  const int nx = g.n[0];
  const int ny = g.dimension == 2 ? g.n[1] : 1;
  const double vol = g.cell_volume();
  const double wx = vol / (g.dx(0) * g.dx(0));
  const double wy = g.dimension == 2 ? vol / (g.dx(1) * g.dx(1)) : 0.0;

  double s = 0.0;
  // Oriented edges along x: n+1 per row, boundary neighbors are zero.
  for (int j = 0; j < ny; ++j) {
    double prev = 0.0;
    for (int i = 0; i < nx; ++i) {
      const double cur = v[j * nx + i];
      const double d = cur - prev;
      s += wx * d * d;
      prev = cur;
    }
    s += wx * prev * prev;  // edge to the right boundary
  }
  if (g.dimension == 2) {
    for (int i = 0; i < nx; ++i) {
      double prev = 0.0;
      for (int j = 0; j < ny; ++j) {
        const double cur = v[j * nx + i];
        const double d = cur - prev;
        s += wy * d * d;
        prev = cur;
      }
      s += wy * prev * prev;
    }
  }
  return std::sqrt(s);
}

double norm_hminus1(const ScalarField& v, const SpatialGrid& g) {
  v.check_grid(g);
  BandedSystem poisson = assemble_shifted_laplacian(g, 0.0, nullptr, 1.0);
  poisson.factor();
  std::vector<double> w = v.values;
  poisson.solve(w);
  return std::sqrt(kernels::dot(v.data(), w.data(), w.size()) * g.cell_volume());
}

double poincare_constant(const SpatialGrid& g) {
  g.validate();
  double lambda_min = 0.0;
  for (int a = 0; a < g.dimension; ++a) {
    const double dx = g.dx(a);
    lambda_min += (2.0 / (dx * dx)) * (1.0 - std::cos(std::numbers::pi * dx / g.extent[a]));
  }
  return 1.0 / lambda_min;
}

namespace {

inline double trapezoid_weight(int k, int m) { return (k == 0 || k == m) ? 0.5 : 1.0; }

}  // namespace

double spacetime_inner(const SpaceTimeField& a, const SpaceTimeField& b, const TimeGrid& tg,
                       const SpatialGrid& g) {
  a.check_grids(g, tg);
  b.check_grids(g, tg);
  const double dt = tg.dt();
  const double vol = g.cell_volume();
  double s = 0.0;
  for (int k = 0; k <= tg.steps; ++k) {
    s += trapezoid_weight(k, tg.steps) *
         kernels::dot(a.slice(k).data(), b.slice(k).data(), a.slice_size);
  }
  return s * dt * vol;
}

double spacetime_norm_l2(const SpaceTimeField& w, const TimeGrid& tg, const SpatialGrid& g) {
  w.check_grids(g, tg);
  const double dt = tg.dt();
  const double vol = g.cell_volume();
  double s = 0.0;
  for (int k = 0; k <= tg.steps; ++k) {
    s += trapezoid_weight(k, tg.steps) * kernels::sum_squares(w.slice(k).data(), w.slice_size);
  }
  return std::sqrt(s * dt * vol);
}

double norm_l2t_linf_sq(const SpaceTimeField& w, const TimeGrid& tg) {
  const double dt = tg.dt();
  double s = 0.0;
  for (int k = 0; k <= tg.steps; ++k) {
    const double mx = kernels::max_abs(w.slice(k).data(), w.slice_size);
    s += trapezoid_weight(k, tg.steps) * mx * mx;
  }
  return s * dt;
}

double norm_linf_q(const SpaceTimeField& w) {
  return kernels::max_abs(w.values.data(), w.values.size());
}

double norm_linft_l2(const SpaceTimeField& w, const TimeGrid& tg, const SpatialGrid& g) {
  const double vol = g.cell_volume();
  double m = 0.0;
  for (int k = 0; k <= tg.steps; ++k) {
    m = std::max(m, kernels::sum_squares(w.slice(k).data(), w.slice_size) * vol);
  }
  return std::sqrt(m);
}

double norm_u_space(const SpaceTimeField& w, const TimeGrid& tg) {
  return std::max(std::sqrt(norm_l2t_linf_sq(w, tg)), norm_linf_q(w));
}

}  // namespace wavectrl
