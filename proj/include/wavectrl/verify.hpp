#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wavectrl/problem.hpp"
#include "wavectrl/scenario.hpp"

namespace wavectrl {

enum class CheckStatus { pass, fail, vacuous };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::fail;
  double measured = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string detail;
};

struct VerifySuiteReport {
  std::vector<CheckResult> checks;

  bool all_passed() const {
    for (const auto& c : checks) {
      if (c.status == CheckStatus::fail) return false;
    }
    return true;
  }
};

// Runs the full property suite (manufactured convergence, energy estimates,
// adjoint duality, derivative consistency, optimizer-vs-oracle, KKT
// certificate, perfect tracking, second-order conditions, quadratic growth,
// horizon truncation, Lipschitz stability) on fixed reference meshes.
VerifySuiteReport run_verify_suite(std::uint64_t seed);

// Max-in-time L2 error of the computed state against the closed-form damped
// mode e^{-t/2}(cos wt + sin(wt)/(2w)) sin(pi x), w = sqrt(pi^2 - 1/4),
// on the 1D mesh with n interior points and m steps over [0, 8].
double manufactured_max_error(int n, int m);

// Dense projected-descent oracle on the identical discrete objective:
// gradient by central finite differences over every control unknown, same
// projection, Armijo line search. Used to cross-check the adjoint-based
// optimizer; deliberately independent of the adjoint code path.
SpaceTimeField brute_force_oracle_solve(const WaveProblem& p, double tol, int max_iter);

struct HorizonSweepRow {
  double horizon = 0.0;
  double j = 0.0;
  double kkt_residual = 0.0;
  double adjoint_tail = 0.0;  // ||phi(T_h)|| + ||phidot(T_h)||_{H^-1} of the run
};

// Re-evaluates the scenario at horizons T_h, factor*T_h, factor^2*T_h with a
// fixed time step (m scales with the horizon).
std::vector<HorizonSweepRow> sweep_horizon(const Scenario& sc, int factor, int refine);

}  // namespace wavectrl
