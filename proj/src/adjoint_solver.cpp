#include "wavectrl/adjoint_solver.hpp"

#include <algorithm>
#include <cmath>

#include "wavectrl/domain.hpp"
#include "wavectrl/state_solver.hpp"

namespace wavectrl {

namespace {

SpaceTimeField time_reversed(const SpaceTimeField& w, const TimeGrid& tg) {
  SpaceTimeField r = w;
  const int m = tg.steps;
  for (int k = 0; k <= m; ++k) {
    auto src = w.slice(m - k);
    std::copy(src.begin(), src.end(), r.slice(k).begin());
  }
  return r;
}

// phidot from centered differences of phi, one-sided second order at the ends.
SpaceTimeField differentiate_in_time(const SpaceTimeField& phi, const TimeGrid& tg) {
  const int m = tg.steps;
  const double dt = tg.dt();
  const std::size_t n = phi.slice_size;
  SpaceTimeField d = phi;
  for (int k = 1; k < m; ++k) {
    auto p = phi.slice(k + 1);
    auto q = phi.slice(k - 1);
    auto out = d.slice(k);
    for (std::size_t i = 0; i < n; ++i) out[i] = (p[i] - q[i]) / (2.0 * dt);
  }
  {
    auto p0 = phi.slice(0), p1 = phi.slice(1), p2 = phi.slice(2);
    auto out = d.slice(0);
    for (std::size_t i = 0; i < n; ++i) out[i] = (-3.0 * p0[i] + 4.0 * p1[i] - p2[i]) / (2.0 * dt);
  }
  {
    auto p0 = phi.slice(m), p1 = phi.slice(m - 1), p2 = phi.slice(m - 2);
    auto out = d.slice(m);
    for (std::size_t i = 0; i < n; ++i) out[i] = (3.0 * p0[i] - 4.0 * p1[i] + p2[i]) / (2.0 * dt);
  }
  return d;
}

}  // namespace

AdjointTrajectory solve_adjoint_with_source(const WaveProblem& p, const SpaceTimeField& source) {
  source.check_grids(p.grid, p.time);
  const ScalarField zero(p.grid.point_count());
  SpaceTimeField u_rev = time_reversed(p.u, p.time);
  SpaceTimeField src_rev = time_reversed(source, p.time);

  StateTrajectory psi = solve_wave(p.grid, p.time, zero, zero, u_rev, src_rev);

  AdjointTrajectory adj;
  adj.phi = time_reversed(psi.y, p.time);
  adj.phidot = differentiate_in_time(adj.phi, p.time);

  ScalarField phi_T = adj.phi.slice_field(p.time.steps);
  ScalarField phidot_T = adj.phidot.slice_field(p.time.steps);
  adj.terminal_l2 = norm_l2(phi_T, p.grid);
  adj.terminal_hm1 = norm_hminus1(phidot_T, p.grid);
  return adj;
}

AdjointTrajectory solve_adjoint(const WaveProblem& p, const StateTrajectory& tr) {
  SpaceTimeField source(p.grid, p.time);
  for (std::size_t i = 0; i < source.values.size(); ++i) {
    source.values[i] = tr.y.values[i] - p.yd.values[i];
  }
  return solve_adjoint_with_source(p, source);
}

DecayCertificate decay_certificate(const WaveProblem& p, int factor) {
  if (factor < 2) throw ValidationError("decay_certificate: factor must be >= 2");
  p.validate();

  // Extended problem: same dt, horizon scaled by `factor`, control / forcing /
  // target zero-extended beyond T_h.
  WaveProblem ext = p;
  ext.time = TimeGrid(p.time.horizon * factor, p.time.steps * factor);
  ext.f = SpaceTimeField(p.grid, ext.time);
  ext.u = SpaceTimeField(p.grid, ext.time);
  ext.yd = SpaceTimeField(p.grid, ext.time);
  ext.alpha = SpaceTimeField(p.grid, ext.time, -norm_linf_q(p.alpha) - 1.0);
  ext.beta = SpaceTimeField(p.grid, ext.time, norm_linf_q(p.beta) + 1.0);
  for (int k = 0; k <= p.time.steps; ++k) {
    std::copy(p.f.slice(k).begin(), p.f.slice(k).end(), ext.f.slice(k).begin());
    std::copy(p.u.slice(k).begin(), p.u.slice(k).end(), ext.u.slice(k).begin());
    std::copy(p.yd.slice(k).begin(), p.yd.slice(k).end(), ext.yd.slice(k).begin());
  }

  StateTrajectory tr_base = solve_forward(p);
  StateTrajectory tr_ext = solve_forward(ext);
  AdjointTrajectory adj_base = solve_adjoint(p, tr_base);
  AdjointTrajectory adj_ext = solve_adjoint(ext, tr_ext);

  DecayCertificate cert;
  cert.horizon = p.time.horizon;
  cert.extended_horizon = ext.time.horizon;

  const std::size_t n = p.grid.point_count();
  for (int k = 0; k <= p.time.steps; ++k) {
    ScalarField diff(n);
    auto a = adj_base.phi.slice(k);
    auto b = adj_ext.phi.slice(k);
    for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];
    cert.sup_difference = std::max(cert.sup_difference, norm_l2(diff, p.grid));
  }
  ScalarField tail = adj_ext.phi.slice_field(p.time.steps);
  ScalarField tail_dot = adj_ext.phidot.slice_field(p.time.steps);
  cert.tail_l2 = norm_l2(tail, p.grid);
  cert.tail_hm1 = norm_hminus1(tail_dot, p.grid);
  return cert;
}

}  // namespace wavectrl
