#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wavectrl/domain.hpp"

using namespace wavectrl;
using std::numbers::pi;

namespace {

ScalarField sine_mode(const SpatialGrid& g, int mode) {
  ScalarField v(g.point_count());
  for (int i = 0; i < g.n[0]; ++i) v[i] = std::sin(mode * pi * g.coord(0, i));
  return v;
}

double lambda_min_1d(const SpatialGrid& g) {
  const double dx = g.dx(0);
  return 2.0 / (dx * dx) * (1.0 - std::cos(pi * dx / g.extent[0]));
}

}  // namespace

TEST_CASE("laplacian stencil by hand") {
  SpatialGrid g = SpatialGrid::interval(1.0, 3);  // dx = 1/4
  ScalarField v(std::vector<double>{1.0, 0.0, 0.0});
  ScalarField lap = laplacian_apply(v, g);
  const double s = 16.0;  // 1/dx^2
  CHECK(lap[0] == doctest::Approx(-2.0 * s));
  CHECK(lap[1] == doctest::Approx(1.0 * s));
  CHECK(lap[2] == doctest::Approx(0.0));
}

TEST_CASE("discrete sine mode is an eigenvector") {
  SpatialGrid g = SpatialGrid::interval(1.0, 15);
  ScalarField v = sine_mode(g, 1);
  ScalarField lap = laplacian_apply(v, g);
  const double lambda = lambda_min_1d(g);
  for (std::size_t i = 0; i < v.size(); ++i) {
    CHECK(lap[i] == doctest::Approx(-lambda * v[i]).epsilon(1e-12));
  }
}

TEST_CASE("midpoint inner product by hand") {
  SpatialGrid g = SpatialGrid::interval(1.0, 3);
  ScalarField a(std::vector<double>{1.0, 1.0, 1.0});
  CHECK(inner_l2(a, a, g) == doctest::Approx(0.75));
  ScalarField b(std::vector<double>{2.0, 0.0, 0.0});
  CHECK(inner_l2(a, b, g) == doctest::Approx(0.5));
}

TEST_CASE("L2 norm of the first sine mode is 1/sqrt(2) to roundoff") {
  // discrete orthogonality: sum of sin^2(k pi/(n+1)) is exactly (n+1)/2,
  // so the midpoint quadrature reproduces the continuum norm exactly
  for (int n : {15, 31, 63}) {
    SpatialGrid g = SpatialGrid::interval(1.0, n);
    const double err = std::fabs(norm_l2(sine_mode(g, 1), g) - 1.0 / std::sqrt(2.0));
    CHECK(err < 1e-14);
  }
}

TEST_CASE("H1 seminorm matches the Laplacian quadratic form") {
  SpatialGrid g = SpatialGrid::interval(1.0, 33);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  ScalarField v(g.point_count());
  for (auto& x : v.values) x = uni(rng);

  ScalarField lap = laplacian_apply(v, g);
  ScalarField neg_lap(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) neg_lap[i] = -lap[i];
  const double h1 = norm_h10(v, g);
  CHECK(h1 * h1 == doctest::Approx(inner_l2(v, neg_lap, g)).epsilon(1e-12));
}

TEST_CASE("H1 seminorm of sin(pi x) approximates pi/sqrt(2)") {
  SpatialGrid g = SpatialGrid::interval(1.0, 127);
  CHECK(norm_h10(sine_mode(g, 1), g) == doctest::Approx(pi / std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("poincare constant closed form and continuum limits") {
  SpatialGrid g = SpatialGrid::interval(1.0, 3);
  CHECK(poincare_constant(g) == doctest::Approx(1.0 / lambda_min_1d(g)).epsilon(1e-14));

  SpatialGrid fine = SpatialGrid::interval(1.0, 511);
  CHECK(poincare_constant(fine) == doctest::Approx(1.0 / (pi * pi)).epsilon(1e-4));

  SpatialGrid sq = SpatialGrid::rectangle(1.0, 1.0, 127, 127);
  CHECK(poincare_constant(sq) == doctest::Approx(1.0 / (2.0 * pi * pi)).epsilon(1e-3));
}

TEST_CASE("discrete Poincare inequality holds for the minimizing mode") {
  SpatialGrid g = SpatialGrid::interval(1.0, 31);
  ScalarField v = sine_mode(g, 1);
  const double l2 = norm_l2(v, g);
  const double h1 = norm_h10(v, g);
  // equality (up to roundoff) for the lowest mode, inequality otherwise
  CHECK(l2 * l2 == doctest::Approx(poincare_constant(g) * h1 * h1).epsilon(1e-12));
  ScalarField w = sine_mode(g, 3);
  const double l2w = norm_l2(w, g);
  const double h1w = norm_h10(w, g);
  CHECK(l2w * l2w < poincare_constant(g) * h1w * h1w);
}

TEST_CASE("H^-1 norm of an eigenvector") {
  SpatialGrid g = SpatialGrid::interval(1.0, 31);
  for (int mode : {1, 2}) {
    ScalarField v = sine_mode(g, mode);
    const double dx = g.dx(0);
    const double lambda = 2.0 / (dx * dx) * (1.0 - std::cos(mode * pi * dx));
    CHECK(norm_hminus1(v, g) == doctest::Approx(norm_l2(v, g) / std::sqrt(lambda)).epsilon(1e-11));
  }
}

TEST_CASE("norm ordering H^-1 <= sqrt(c_omega) L2") {
  SpatialGrid g = SpatialGrid::interval(1.0, 31);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    ScalarField v(g.point_count());
    for (auto& x : v.values) x = uni(rng);
    CHECK(norm_hminus1(v, g) <=
          std::sqrt(poincare_constant(g)) * norm_l2(v, g) * (1.0 + 1e-12));
  }
}

TEST_CASE("space-time quadrature is second order") {
  // integral of sin(pi x)^2 cos(t)^2 over [0,2] x (0,1) = (1/2)(1 + sin(4)/4)
  const double exact = 0.5 * (1.0 + 0.25 * std::sin(4.0));
  double errs[2];
  for (int pass = 0; pass < 2; ++pass) {
    const int n = pass == 0 ? 15 : 31;
    const int m = pass == 0 ? 32 : 64;
    SpatialGrid g = SpatialGrid::interval(1.0, n);
    TimeGrid tg(2.0, m);
    SpaceTimeField w(g, tg);
    for (int k = 0; k <= m; ++k) {
      auto s = w.slice(k);
      for (int i = 0; i < n; ++i) {
        s[i] = std::sin(pi * g.coord(0, i)) * std::cos(tg.node(k));
      }
    }
    const double q = spacetime_norm_l2(w, tg, g);
    errs[pass] = std::fabs(q * q - exact);
  }
  CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.25));
}

TEST_CASE("control norm combines both components") {
  SpatialGrid g = SpatialGrid::interval(1.0, 7);
  TimeGrid tg(1.0, 4);
  SpaceTimeField w(g, tg, 2.0);
  CHECK(norm_linf_q(w) == doctest::Approx(2.0));
  // L2(0,T;Linf)^2 = int_0^1 4 dt = 4
  CHECK(norm_l2t_linf_sq(w, tg) == doctest::Approx(4.0));
  CHECK(norm_u_space(w, tg) == doctest::Approx(2.0));

  // short spike: Linf(Q) dominates the time-integrated component
  SpaceTimeField spike(g, tg);
  spike.slice(2)[3] = 5.0;
  CHECK(norm_u_space(spike, tg) == doctest::Approx(5.0));
}

TEST_CASE("2d laplacian five-point stencil") {
  SpatialGrid g = SpatialGrid::rectangle(1.0, 1.0, 3, 3);  // dx = dy = 1/4
  ScalarField v(g.point_count());
  v[4] = 1.0;  // center point
  ScalarField lap = laplacian_apply(v, g);
  CHECK(lap[4] == doctest::Approx(-64.0));
  CHECK(lap[1] == doctest::Approx(16.0));
  CHECK(lap[3] == doctest::Approx(16.0));
  CHECK(lap[0] == doctest::Approx(0.0));
}
