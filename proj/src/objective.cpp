#include "wavectrl/objective.hpp"

#include <cmath>

#include "wavectrl/domain.hpp"
#include "wavectrl/kernels.hpp"
#include "wavectrl/state_solver.hpp"

namespace wavectrl {

CostReport evaluate_cost(const WaveProblem& p, const StateTrajectory& tr) {
  SpaceTimeField err(p.grid, p.time);
  for (std::size_t i = 0; i < err.values.size(); ++i) err.values[i] = tr.y.values[i] - p.yd.values[i];
  const double track = spacetime_norm_l2(err, p.time, p.grid);
  const double ctrl = spacetime_norm_l2(p.u, p.time, p.grid);
  CostReport rep;
  rep.tracking_part = 0.5 * track * track;
  rep.control_part = 0.5 * p.gamma * ctrl * ctrl;
  rep.j = rep.tracking_part + rep.control_part;
  return rep;
}

CostReport evaluate_cost(const WaveProblem& p) {
  return evaluate_cost(p, solve_forward(p));
}

namespace {

GradientField assemble_gradient(const WaveProblem& p, const StateTrajectory& tr,
                                const AdjointTrajectory& adj) {
  GradientField gf;
  gf.g = SpaceTimeField(p.grid, p.time);
  kernels::mul(adj.phi.values.data(), tr.y.values.data(), gf.g.values.data(), gf.g.values.size());
  kernels::axpy(p.gamma, p.u.values.data(), gf.g.values.data(), gf.g.values.size());
  return gf;
}

}  // namespace

GradientField gradient(const WaveProblem& p) {
  StateTrajectory tr = solve_forward(p);
  AdjointTrajectory adj = solve_adjoint(p, tr);
  return assemble_gradient(p, tr, adj);
}

FirstOrderData first_order_data(const WaveProblem& p) {
  FirstOrderData d;
  d.state = solve_forward(p);
  d.adjoint = solve_adjoint(p, d.state);
  d.gradient = assemble_gradient(p, d.state, d.adjoint);
  d.cost = evaluate_cost(p, d.state);
  d.cost.gradient_norm_l2 = spacetime_norm_l2(d.gradient.g, p.time, p.grid);
  return d;
}

double directional_derivative(const WaveProblem& p, const SpaceTimeField& h) {
  h.check_grids(p.grid, p.time);
  GradientField gf = gradient(p);
  return spacetime_inner(gf.g, h, p.time, p.grid);
}

double second_derivative_form(const WaveProblem& p, const AdjointTrajectory& adj,
                              const SpaceTimeField& h1, const LinearizedTrajectory& z1,
                              const SpaceTimeField& h2, const LinearizedTrajectory& z2) {
  const double zz = spacetime_inner(z1.z, z2.z, p.time, p.grid);

  SpaceTimeField cross(p.grid, p.time);
  kernels::mul(h1.values.data(), z2.z.values.data(), cross.values.data(), cross.values.size());
  SpaceTimeField cross2(p.grid, p.time);
  kernels::mul(h2.values.data(), z1.z.values.data(), cross2.values.data(), cross2.values.size());
  kernels::axpy(1.0, cross2.values.data(), cross.values.data(), cross.values.size());
  const double phi_term = spacetime_inner(adj.phi, cross, p.time, p.grid);

  const double hh = spacetime_inner(h1, h2, p.time, p.grid);
  return zz + phi_term + p.gamma * hh;
}

double second_derivative(const WaveProblem& p, const SpaceTimeField& h1, const SpaceTimeField& h2) {
  StateTrajectory tr = solve_forward(p);
  AdjointTrajectory adj = solve_adjoint(p, tr);
  LinearizedTrajectory z1 = solve_linearized(p, tr, h1);
  LinearizedTrajectory z2 = solve_linearized(p, tr, h2);
  return second_derivative_form(p, adj, h1, z1, h2, z2);
}

DerivativeBoundProbe derivative_bound_probe(const WaveProblem& p, const SpaceTimeField& u1,
                                            const SpaceTimeField& u2, const SpaceTimeField& h1,
                                            const SpaceTimeField& h2) {
  DerivativeBoundProbe probe;
  const double h1_norm = norm_u_space(h1, p.time);
  const double h2_norm = norm_u_space(h2, p.time);
  if (h1_norm == 0.0) return probe;

  WaveProblem p1 = p;
  p1.u = u1;
  WaveProblem p2 = p;
  p2.u = u2;

  const double j1_h1 = directional_derivative(p1, h1);
  probe.first_bound = std::fabs(j1_h1) / h1_norm;

  if (h2_norm > 0.0) {
    probe.second_bound = std::fabs(second_derivative(p1, h1, h2)) / (h1_norm * h2_norm);
  }

  SpaceTimeField du(p.grid, p.time);
  for (std::size_t i = 0; i < du.values.size(); ++i) du.values[i] = u1.values[i] - u2.values[i];
  const double du_norm = norm_u_space(du, p.time);
  if (du_norm > 0.0) {
    const double j2_h1 = directional_derivative(p2, h1);
    probe.first_lipschitz = std::fabs(j1_h1 - j2_h1) / (du_norm * h1_norm);
    const double q1 = second_derivative(p1, h1, h1);
    const double q2 = second_derivative(p2, h1, h1);
    probe.second_lipschitz = std::fabs(q1 - q2) / (du_norm * h1_norm * h1_norm);
  }
  return probe;
}

}  // namespace wavectrl
