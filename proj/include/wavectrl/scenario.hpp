#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "wavectrl/optimizer.hpp"
#include "wavectrl/problem.hpp"

namespace wavectrl {

// Mesh-independent analytic initializer from the fixed catalog. Evaluating on
// a refined grid reproduces the same continuous function, which is what the
// refinement studies rely on.
struct Initializer {
  enum class Kind { zero, constant, sine_mode, gaussian_bump, decaying_exp_sine, tracked_free_state };

  Kind kind = Kind::zero;
  double value = 0.0;                  // constant
  int mode = 1;                        // sine-mode / decaying-exp
  double amplitude = 1.0;              // sine-mode / gaussian-bump / decaying-exp
  std::array<double, 2> center{0.5, 0.5};  // gaussian-bump
  double width = 0.1;                  // gaussian-bump
  double rate = 1.0;                   // decaying-exp

  static Initializer zero() { return {}; }
  static Initializer constant(double c) {
    Initializer i;
    i.kind = Kind::constant;
    i.value = c;
    return i;
  }
  static Initializer sine(int mode, double amplitude = 1.0) {
    Initializer i;
    i.kind = Kind::sine_mode;
    i.mode = mode;
    i.amplitude = amplitude;
    return i;
  }
  static Initializer decaying_sine(double rate, int mode, double amplitude = 1.0) {
    Initializer i;
    i.kind = Kind::decaying_exp_sine;
    i.rate = rate;
    i.mode = mode;
    i.amplitude = amplitude;
    return i;
  }
  static Initializer gaussian(std::array<double, 2> center, double width, double amplitude = 1.0) {
    Initializer i;
    i.kind = Kind::gaussian_bump;
    i.center = center;
    i.width = width;
    i.amplitude = amplitude;
    return i;
  }
  static Initializer tracked_free_state() {
    Initializer i;
    i.kind = Kind::tracked_free_state;
    return i;
  }

  double eval(const SpatialGrid& g, const std::array<double, 2>& x, double t) const;

  bool operator==(const Initializer&) const = default;
};

// Symbolic scenario: everything needed to build a WaveProblem on any mesh
// refinement level.
struct Scenario {
  int dimension = 1;
  double extent = 1.0;
  int n = 63;
  double horizon = 8.0;
  int steps = 512;

  Initializer y0;
  Initializer y1;
  Initializer f;
  Initializer yd;
  Initializer alpha = Initializer::constant(-1.0);
  Initializer beta = Initializer::constant(1.0);
  Initializer u0;

  double gamma = 1.0;
  OptimizerConfig optimizer;
  std::string output_dir = "out";
  std::uint64_t seed = 0;

  bool operator==(const Scenario&) const = default;
};

// Parses the JSON scenario document; unknown keys are rejected, defaults
// applied, constant bounds validated symbolically.
Scenario parse_scenario(const std::string& text);
std::string serialize_scenario(const Scenario& sc);

// Materializes the scenario on its grid, halving dx and dt `refine` times.
// yd = tracked-free-state is resolved by a forward solve with u = 0.
WaveProblem build_problem(const Scenario& sc, int refine = 0);

ScalarField make_scalar_field(const Initializer& init, const SpatialGrid& g);
SpaceTimeField make_spacetime_field(const Initializer& init, const SpatialGrid& g, const TimeGrid& tg);

}  // namespace wavectrl
