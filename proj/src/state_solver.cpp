#include "wavectrl/state_solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "wavectrl/banded.hpp"
#include "wavectrl/domain.hpp"
#include "wavectrl/kernels.hpp"

namespace wavectrl {

namespace {

constexpr double kBlowupFactor = 1e12;

// Step matrix M = a I - 1/4 (Lap + diag(u_slice)), a = 1/dt^2 + 1/(2 dt).
BandedSystem make_step_matrix(const SpatialGrid& g, double a, std::span<const double> u_slice) {
  std::vector<double> diag_var(u_slice.size());
  for (std::size_t i = 0; i < u_slice.size(); ++i) diag_var[i] = -0.25 * u_slice[i];
  BandedSystem m = assemble_shifted_laplacian(g, a, diag_var.data(), 0.25);
  m.factor();
  return m;
}

bool same_slice(std::span<const double> a, std::span<const double> b) {
  return std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

StateTrajectory solve_wave(const SpatialGrid& g, const TimeGrid& tg, const ScalarField& y0,
                           const ScalarField& y1, const SpaceTimeField& u,
                           const SpaceTimeField& rhs) {
  y0.check_grid(g);
  y1.check_grid(g);
  u.check_grids(g, tg);
  rhs.check_grids(g, tg);

  const int m = tg.steps;
  const double dt = tg.dt();
  const double a = 1.0 / (dt * dt) + 1.0 / (2.0 * dt);

  // Invertibility guard for the implicit step matrix.
  const double u_max = norm_linf_q(u);
  if (0.25 * u_max >= 1.0 / (dt * dt)) {
    throw ValidationError("time step too large for the control magnitude (step matrix may be singular)");
  }

  const double scale = std::max({kernels::max_abs(y0.data(), y0.size()),
                                 kernels::max_abs(y1.data(), y1.size()), norm_linf_q(rhs)});
  const double blowup = scale > 0.0 ? kBlowupFactor * scale : kBlowupFactor;

  const std::size_t n = g.point_count();
  StateTrajectory tr;
  tr.y = SpaceTimeField(g, tg);
  tr.v = SpaceTimeField(g, tg);
  tr.y.set_slice(0, y0);
  tr.v.set_slice(0, y1);

  // Startup: explicit second-order Taylor value for the homogeneous part,
  // implicit treatment of the source term so the time-reversed solve is the
  // transpose of the forward one (needed for the discrete duality identity).
  std::optional<BandedSystem> step;
  int step_u_slice = -1;
  auto refresh_step = [&](int k) {
    if (step && step_u_slice >= 0 && same_slice(u.slice(k), u.slice(step_u_slice))) {
      step_u_slice = k;
      return;
    }
    step = make_step_matrix(g, a, u.slice(k));
    step_u_slice = k;
  };

  {
    refresh_step(std::min(1, m));
    ScalarField lap0 = laplacian_apply(y0, g);
    std::vector<double> y1v(n);
    auto u0 = u.slice(0);
    for (std::size_t i = 0; i < n; ++i) {
      y1v[i] = y0[i] + dt * y1[i] + 0.5 * dt * dt * (lap0[i] + u0[i] * y0[i] - y1[i]);
    }
    std::vector<double> src(rhs.slice(0).begin(), rhs.slice(0).end());
    for (auto& s : src) s *= 0.5;
    step->solve(src);
    for (std::size_t i = 0; i < n; ++i) y1v[i] += src[i];
    std::copy(y1v.begin(), y1v.end(), tr.y.slice(1).begin());
  }

  const double c_prev = 1.0 / (dt * dt) - 1.0 / (2.0 * dt);
  const double c_cur = 2.0 / (dt * dt);

  std::vector<double> b(n);
  for (int k = 1; k < m; ++k) {
    refresh_step(k);
    auto yk = tr.y.slice(k);
    auto ykm = tr.y.slice(k - 1);
    auto uk = u.slice(k);
    auto fk = rhs.slice(k);

    // avg contribution of the known levels: 1/4 (Lap + diag(u)) (2 y^k + y^{k-1})
    ScalarField known(n);
    for (std::size_t i = 0; i < n; ++i) known[i] = 2.0 * yk[i] + ykm[i];
    ScalarField lap_known = laplacian_apply(known, g);
    for (std::size_t i = 0; i < n; ++i) {
      b[i] = c_cur * yk[i] - c_prev * ykm[i] + 0.25 * (lap_known[i] + uk[i] * known[i]) + fk[i];
    }
    step->solve(b);
    std::copy(b.begin(), b.end(), tr.y.slice(k + 1).begin());

    if (kernels::max_abs(b.data(), n) > blowup) {
      throw InstabilityDetected("state blow-up detected at step " + std::to_string(k + 1));
    }
  }

  // Velocity: centered differences in the interior, one-sided second order at
  // the final node, exact initial velocity at t_0.
  for (int k = 1; k < m; ++k) {
    auto yp = tr.y.slice(k + 1);
    auto ym = tr.y.slice(k - 1);
    auto vk = tr.v.slice(k);
    for (std::size_t i = 0; i < n; ++i) vk[i] = (yp[i] - ym[i]) / (2.0 * dt);
  }
  {
    auto ym0 = tr.y.slice(m);
    auto ym1 = tr.y.slice(m - 1);
    auto ym2 = tr.y.slice(m - 2);
    auto vm = tr.v.slice(m);
    for (std::size_t i = 0; i < n; ++i) vm[i] = (3.0 * ym0[i] - 4.0 * ym1[i] + ym2[i]) / (2.0 * dt);
  }
  return tr;
}

StateTrajectory solve_forward(const WaveProblem& p) {
  p.validate();
  return solve_wave(p.grid, p.time, p.y0, p.y1, p.u, p.f);
}

double energy(const StateTrajectory& tr, const SpatialGrid& g, int k) {
  if (k < 0 || k >= tr.y.slices) throw std::out_of_range("energy: step index out of range");
  ScalarField yk = tr.y.slice_field(k);
  const double h1 = norm_h10(yk, g);
  const double v2 = kernels::sum_squares(tr.v.slice(k).data(), tr.v.slice_size) * g.cell_volume();
  return 0.5 * v2 + 0.5 * h1 * h1;
}

namespace {

double data_norm_sq(const WaveProblem& p) {
  const double h1 = norm_h10(p.y0, p.grid);
  const double l2 = norm_l2(p.y1, p.grid);
  const double fq = spacetime_norm_l2(p.f, p.time, p.grid);
  return h1 * h1 + l2 * l2 + fq * fq;
}

}  // namespace

EnergyReport verify_energy_estimate(const WaveProblem& p, const StateTrajectory& tr) {
  EnergyReport rep;
  const int m = p.time.steps;
  rep.energy.resize(m + 1);
  double lhs = 0.0;
  for (int k = 0; k <= m; ++k) {
    rep.energy[k] = energy(tr, p.grid, k);
    lhs = std::max(lhs, 2.0 * rep.energy[k]);  // |y|_{H1}^2 + ||y_t||^2
  }
  const double c_omega = poincare_constant(p.grid);
  rep.constant = std::exp(c_omega * norm_l2t_linf_sq(p.u, p.time));
  rep.lhs = lhs;
  rep.rhs = rep.constant * data_norm_sq(p);
  rep.satisfied = rep.lhs <= rep.rhs * (1.0 + kEnergyTolerance);
  return rep;
}

EnergyReport verify_accel_estimate(const WaveProblem& p, const StateTrajectory& tr) {
  EnergyReport rep;
  const int m = p.time.steps;
  const std::size_t n = p.grid.point_count();
  rep.energy.resize(m + 1);
  double lhs = 0.0;
  for (int k = 0; k <= m; ++k) {
    ScalarField yk = tr.y.slice_field(k);
    ScalarField acc = laplacian_apply(yk, p.grid);
    auto uk = p.u.slice(k);
    auto fk = p.f.slice(k);
    auto vk = tr.v.slice(k);
    for (std::size_t i = 0; i < n; ++i) acc[i] += uk[i] * yk[i] + fk[i] - vk[i];
    const double hm1 = norm_hminus1(acc, p.grid);
    rep.energy[k] = hm1 * hm1;
    lhs = std::max(lhs, hm1 * hm1);
  }
  const double c_omega = poincare_constant(p.grid);
  const double u_linf = norm_linf_q(p.u);
  const double grow = std::exp(c_omega * norm_l2t_linf_sq(p.u, p.time));
  rep.constant = 3.0 * (1.0 + std::sqrt(c_omega) * u_linf) * (1.0 + std::sqrt(c_omega) * u_linf) * grow;
  const double f_linf_l2 = norm_linft_l2(p.f, p.time, p.grid);
  rep.lhs = lhs;
  rep.rhs = rep.constant * data_norm_sq(p) + 3.0 * f_linf_l2 * f_linf_l2;
  rep.satisfied = rep.lhs <= rep.rhs * (1.0 + kEnergyTolerance);
  return rep;
}

double lipschitz_probe(const WaveProblem& p1, const WaveProblem& p2) {
  p1.validate();
  p2.validate();
  if (!(p1.grid == p2.grid) || !(p1.time == p2.time)) {
    throw ValidationError("lipschitz_probe: problems must share grids");
  }
  if (p1.y0 != p2.y0 || p1.y1 != p2.y1) {
    throw ValidationError("lipschitz_probe: problems must share initial data");
  }
  if (p1.u == p2.u && p1.f == p2.f) return 0.0;

  StateTrajectory t1 = solve_forward(p1);
  StateTrajectory t2 = solve_forward(p2);

  const int m = p1.time.steps;
  const std::size_t n = p1.grid.point_count();
  double dy_h1 = 0.0, dv_l2 = 0.0, da_hm1 = 0.0;
  for (int k = 0; k <= m; ++k) {
    ScalarField dy(n), dv(n);
    auto y1s = t1.y.slice(k), y2s = t2.y.slice(k);
    auto v1s = t1.v.slice(k), v2s = t2.v.slice(k);
    for (std::size_t i = 0; i < n; ++i) {
      dy[i] = y1s[i] - y2s[i];
      dv[i] = v1s[i] - v2s[i];
    }
    const double h1 = norm_h10(dy, p1.grid);
    dy_h1 = std::max(dy_h1, h1 * h1);
    const double l2 = norm_l2(dv, p1.grid);
    dv_l2 = std::max(dv_l2, l2 * l2);

    // difference of reconstructed accelerations
    ScalarField acc = laplacian_apply(dy, p1.grid);
    auto u1s = p1.u.slice(k), u2s = p2.u.slice(k);
    auto f1s = p1.f.slice(k), f2s = p2.f.slice(k);
    for (std::size_t i = 0; i < n; ++i) {
      acc[i] += u1s[i] * y1s[i] - u2s[i] * y2s[i] + f1s[i] - f2s[i] - dv[i];
    }
    const double hm1 = norm_hminus1(acc, p1.grid);
    da_hm1 = std::max(da_hm1, hm1 * hm1);
  }

  SpaceTimeField du(p1.grid, p1.time), df(p1.grid, p1.time);
  for (std::size_t i = 0; i < du.values.size(); ++i) {
    du.values[i] = p1.u.values[i] - p2.u.values[i];
    df.values[i] = p1.f.values[i] - p2.f.values[i];
  }
  const double du_norm = norm_u_space(du, p1.time);
  const double df_norm =
      std::max(norm_linft_l2(df, p1.time, p1.grid), spacetime_norm_l2(df, p1.time, p1.grid));
  const double denom = du_norm * du_norm + df_norm * df_norm;
  if (denom == 0.0) return 0.0;
  return (dy_h1 + dv_l2 + da_hm1) / denom;
}

}  // namespace wavectrl
