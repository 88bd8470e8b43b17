#pragma once

#include "wavectrl/field.hpp"
#include "wavectrl/grid.hpp"

namespace wavectrl {

// Second-order central-difference Dirichlet Laplacian (3-point stencil in 1D,
// 5-point in 2D); neighbors outside the interior contribute zero.
ScalarField laplacian_apply(const ScalarField& v, const SpatialGrid& g);

// Midpoint quadrature on interior cells: sum(a_i b_i) * cell volume.
double inner_l2(const ScalarField& a, const ScalarField& b, const SpatialGrid& g);
double norm_l2(const ScalarField& v, const SpatialGrid& g);

// Discrete H^1_0 seminorm via oriented edge differences; satisfies
// norm_h10(v)^2 == inner_l2(v, -laplacian_apply(v)) up to roundoff.
double norm_h10(const ScalarField& v, const SpatialGrid& g);

// Discrete H^-1 norm: sqrt(inner_l2(v, w)) with -Laplacian_h w = v.
double norm_hminus1(const ScalarField& v, const SpatialGrid& g);

// Discrete Poincare constant 1/lambda_min of -Laplacian_h (closed form for
// tensor grids).
double poincare_constant(const SpatialGrid& g);

// Trapezoidal-in-time, midpoint-in-space quadrature over the space-time
// cylinder [0, T_h] x Omega.
double spacetime_inner(const SpaceTimeField& a, const SpaceTimeField& b, const TimeGrid& tg,
                       const SpatialGrid& g);
double spacetime_norm_l2(const SpaceTimeField& w, const TimeGrid& tg, const SpatialGrid& g);

// Squared L^2(0,T;L^inf) norm: trapezoidal time-sum of squared spatial max.
double norm_l2t_linf_sq(const SpaceTimeField& w, const TimeGrid& tg);

// L^inf(Q): max over all space-time nodes.
double norm_linf_q(const SpaceTimeField& w);

// L^inf(0,T;L^2): max over time nodes of the spatial L^2 norm.
double norm_linft_l2(const SpaceTimeField& w, const TimeGrid& tg, const SpatialGrid& g);

// Discrete surrogate of the control-space norm, the intersection
// L^2(0,T;L^inf) with L^inf(Q): max of both components.
double norm_u_space(const SpaceTimeField& w, const TimeGrid& tg);

}  // namespace wavectrl
