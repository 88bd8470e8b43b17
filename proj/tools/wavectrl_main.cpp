#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wavectrl/adjoint_solver.hpp"
#include "wavectrl/csv.hpp"
#include "wavectrl/errors.hpp"
#include "wavectrl/objective.hpp"
#include "wavectrl/optimizer.hpp"
#include "wavectrl/scenario.hpp"
#include "wavectrl/state_solver.hpp"
#include "wavectrl/verify.hpp"

namespace {

using namespace wavectrl;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSolver = 2;
constexpr int kExitVerification = 3;

struct Options {
  std::string scenario_path;
  std::string out_dir;  // overrides scenario output.dir when set
  std::optional<std::uint64_t> seed;
  int refine = 0;
  int horizon_factor = 2;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read scenario file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path prepare_out_dir(const Scenario& sc, const Options& opt) {
  std::filesystem::path dir = opt.out_dir.empty() ? sc.output_dir : opt.out_dir;
  std::filesystem::create_directories(dir);
  return dir;
}

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::vacuous:
      return "vacuous";
  }
  return "?";
}

int cmd_solve(const Scenario& sc, const Options& opt) {
  WaveProblem p = build_problem(sc, opt.refine);
  StateTrajectory tr = solve_forward(p);
  EnergyReport energy = verify_energy_estimate(p, tr);
  EnergyReport accel = verify_accel_estimate(p, tr);

  const auto dir = prepare_out_dir(sc, opt);
  write_state_csv((dir / "state.csv").string(), p.grid, p.time, tr);
  {
    std::ofstream out(dir / "energy.csv");
    out << "t,energy\n";
    for (int k = 0; k <= p.time.steps; ++k) {
      out << format_double(p.time.node(k)) << ',' << format_double(energy.energy[k]) << '\n';
    }
  }

  std::cout << "state written to " << (dir / "state.csv").string() << "\n"
            << "energy estimate: lhs=" << format_double(energy.lhs)
            << " rhs=" << format_double(energy.rhs) << " constant=" << format_double(energy.constant)
            << " satisfied=" << (energy.satisfied ? "yes" : "no") << "\n"
            << "accel estimate:  lhs=" << format_double(accel.lhs)
            << " rhs=" << format_double(accel.rhs) << " constant=" << format_double(accel.constant)
            << " satisfied=" << (accel.satisfied ? "yes" : "no") << "\n";
  return (energy.satisfied && accel.satisfied) ? kExitOk : kExitVerification;
}

int cmd_adjoint(const Scenario& sc, const Options& opt) {
  WaveProblem p = build_problem(sc, opt.refine);
  StateTrajectory tr = solve_forward(p);
  AdjointTrajectory adj = solve_adjoint(p, tr);
  DecayCertificate cert = decay_certificate(p, opt.horizon_factor);

  const auto dir = prepare_out_dir(sc, opt);
  write_adjoint_csv((dir / "adjoint.csv").string(), p.grid, p.time, adj);

  std::cout << "adjoint written to " << (dir / "adjoint.csv").string() << "\n"
            << "decay certificate: horizon=" << format_double(cert.horizon)
            << " extended=" << format_double(cert.extended_horizon)
            << " sup_difference=" << format_double(cert.sup_difference)
            << " tail_l2=" << format_double(cert.tail_l2)
            << " tail_hm1=" << format_double(cert.tail_hm1) << "\n";
  return kExitOk;
}

int cmd_optimize(const Scenario& sc, const Options& opt, std::uint64_t seed) {
  WaveProblem p = build_problem(sc, opt.refine);
  OptimizeResult result = projected_gradient_solve(p, sc.optimizer);

  const auto dir = prepare_out_dir(sc, opt);
  write_iterates_csv((dir / "iterates.csv").string(), result.log);
  write_spacetime_csv((dir / "control.csv").string(), p.grid, p.time, {"u"}, {&result.control});

  SecondOrderReport second = second_order_report(p, result, sc.optimizer, seed);

  std::cout << "iterates written to " << (dir / "iterates.csv").string() << "\n"
            << "converged=" << (result.converged ? "yes" : "no")
            << " iterations=" << result.log.size() << " J=" << format_double(result.final_j)
            << " kkt_residual=" << format_double(result.final_kkt) << "\n"
            << "active sets: lower=" << result.active.lower.size()
            << " upper=" << result.active.upper.size() << "\n";
  if (second.vacuous) {
    std::cout << "second-order report: vacuous (critical cone degenerate)\n";
  } else {
    std::cout << "second-order report: min_quotient=" << format_double(second.min_quotient)
              << " samples=" << second.samples
              << " necessary=" << (second.necessary_ok ? "yes" : "no")
              << " sufficient=" << (second.sufficient_ok ? "yes" : "no") << "\n";
  }
  std::cout << "seed=" << seed << "\n";
  return kExitOk;
}

int cmd_verify(const Scenario& sc, const Options& opt, std::uint64_t seed) {
  VerifySuiteReport report = run_verify_suite(seed);

  const auto dir = prepare_out_dir(sc, opt);
  {
    std::ofstream out(dir / "verify.csv");
    out << "name,status,measured,tolerance,seconds\n";
    for (const auto& c : report.checks) {
      out << c.name << ',' << status_name(c.status) << ',' << format_double(c.measured) << ','
          << format_double(c.tolerance) << ',' << format_double(c.seconds) << '\n';
    }
  }

  for (const auto& c : report.checks) {
    std::cout << c.name << ": " << status_name(c.status) << " (measured "
              << format_double(c.measured) << ", tolerance " << format_double(c.tolerance) << ", "
              << format_double(c.seconds) << " s" << (c.detail.empty() ? "" : "; " + c.detail)
              << ")\n";
  }
  std::cout << "seed=" << seed << "\n";
  return report.all_passed() ? kExitOk : kExitVerification;
}

int cmd_sweep(const Scenario& sc, const Options& opt) {
  std::vector<HorizonSweepRow> rows = sweep_horizon(sc, opt.horizon_factor, opt.refine);

  const auto dir = prepare_out_dir(sc, opt);
  {
    std::ofstream out(dir / "sweep.csv");
    out << "horizon,j,kkt_residual,adjoint_tail\n";
    for (const auto& r : rows) {
      out << format_double(r.horizon) << ',' << format_double(r.j) << ','
          << format_double(r.kkt_residual) << ',' << format_double(r.adjoint_tail) << '\n';
    }
  }

  for (const auto& r : rows) {
    std::cout << "T=" << format_double(r.horizon) << " J=" << format_double(r.j)
              << " kkt_residual=" << format_double(r.kkt_residual)
              << " adjoint_tail=" << format_double(r.adjoint_tail) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infinite-horizon bilinear control of the damped wave equation"};
  app.require_subcommand(1);

  Options opt;
  std::string subcommand;
  for (const char* name : {"solve", "adjoint", "optimize", "verify", "sweep-horizon"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--scenario", opt.scenario_path, "scenario file")->required();
    sub->add_option("--out", opt.out_dir, "output directory (overrides output.dir)");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&opt](const std::uint64_t& v) { opt.seed = v; },
        "random seed (overrides the scenario seed)");
    sub->add_option("--refine", opt.refine, "halve dx and dt this many times")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--horizon-factor", opt.horizon_factor,
                    "horizon scaling for decay certificates and sweeps")
        ->check(CLI::Range(2, 16));
    sub->callback([&subcommand, name]() { subcommand = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    Scenario sc = parse_scenario(read_file(opt.scenario_path));
    const std::uint64_t seed = opt.seed.value_or(sc.seed);

    if (subcommand == "solve") return cmd_solve(sc, opt);
    if (subcommand == "adjoint") return cmd_adjoint(sc, opt);
    if (subcommand == "optimize") return cmd_optimize(sc, opt, seed);
    if (subcommand == "verify") return cmd_verify(sc, opt, seed);
    if (subcommand == "sweep-horizon") return cmd_sweep(sc, opt);
    std::cerr << "error: validation: unknown subcommand\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "error: validation: " << e.what() << "\n";
    return kExitValidation;
  } catch (const SolverError& e) {
    std::cerr << "error: solver: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return kExitSolver;
  }
}
