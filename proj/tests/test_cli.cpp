#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _WIN32
#error "posix exit-status decoding assumed"
#endif
#include <sys/wait.h>

namespace {

std::string g_cli_path;

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args, const fs::path& workdir) {
  const fs::path log = workdir / "cli.log";
  const std::string cmd = g_cli_path + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("wavectrl-cli-" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_scenario(const fs::path& dir, const std::string& body) {
  fs::path path = dir / "scenario.json";
  std::ofstream out(path);
  out << body;
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kZeroScenario = R"({
  "grid": {"dimension": 1, "n": 15},
  "time": {"horizon": 2.0, "steps": 32}
})";

const char* kSmallScenario = R"({
  "grid": {"dimension": 1, "n": 7},
  "time": {"horizon": 2.0, "steps": 16},
  "init": {"y0": {"name": "sine-mode", "mode": 1}}
})";

const char* kInvertedScenario = R"({
  "grid": {"dimension": 1, "n": 15},
  "time": {"horizon": 2.0, "steps": 32},
  "bounds": {"alpha": {"name": "constant", "value": 1.0},
             "beta": {"name": "constant", "value": -1.0}}
})";

}  // namespace

TEST_CASE("solve on the zero scenario writes an all-zero trajectory") {
  fs::path dir = fresh_dir("solve-zero");
  fs::path scenario = write_scenario(dir, kZeroScenario);
  RunResult r = run_cli("solve --scenario " + scenario.string() + " --out " + (dir / "out").string(),
                        dir);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("satisfied=yes") != std::string::npos);

  std::ifstream csv(dir / "out" / "state.csv");
  REQUIRE(csv.good());
  std::string header;
  std::getline(csv, header);
  CHECK(header.find("y") != std::string::npos);
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    // every value column after t,x must be exactly zero
    std::stringstream ss(line);
    std::string cell;
    int col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col >= 2) CHECK(std::stod(cell) == 0.0);
      ++col;
    }
  }
  CHECK(rows > 0);
  CHECK(fs::exists(dir / "out" / "energy.csv"));
}

TEST_CASE("validation failures exit with code 1 and a tagged message") {
  fs::path dir = fresh_dir("invalid");
  fs::path scenario = write_scenario(dir, kInvertedScenario);
  RunResult r = run_cli("solve --scenario " + scenario.string(), dir);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("error: validation:") != std::string::npos);
  CHECK(r.output.find("bounds inverted") != std::string::npos);

  RunResult missing = run_cli("solve --scenario " + (dir / "nope.json").string(), dir);
  CHECK(missing.exit_code == 1);
  CHECK(missing.output.find("error: validation:") != std::string::npos);

  RunResult badflag = run_cli("solve --scenario " + scenario.string() + " --bogus", dir);
  CHECK(badflag.exit_code == 1);
}

TEST_CASE("adjoint emits a decay certificate") {
  fs::path dir = fresh_dir("adjoint");
  fs::path scenario = write_scenario(dir, kSmallScenario);
  RunResult r = run_cli(
      "adjoint --scenario " + scenario.string() + " --out " + (dir / "out").string(), dir);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("decay certificate:") != std::string::npos);
  CHECK(fs::exists(dir / "out" / "adjoint.csv"));
}

TEST_CASE("optimize is deterministic for a fixed seed") {
  fs::path dir = fresh_dir("optimize");
  fs::path scenario = write_scenario(dir, kSmallScenario);

  RunResult a = run_cli("optimize --scenario " + scenario.string() + " --seed 5 --out " +
                            (dir / "a").string(),
                        dir);
  RunResult b = run_cli("optimize --scenario " + scenario.string() + " --seed 5 --out " +
                            (dir / "b").string(),
                        dir);
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(a.output.find("converged=yes") != std::string::npos);
  CHECK(a.output.find("seed=5") != std::string::npos);
  CHECK(slurp(dir / "a" / "control.csv") == slurp(dir / "b" / "control.csv"));
  CHECK(slurp(dir / "a" / "iterates.csv") == slurp(dir / "b" / "iterates.csv"));
}

TEST_CASE("sweep-horizon reports shrinking increments") {
  fs::path dir = fresh_dir("sweep");
  fs::path scenario = write_scenario(dir, kSmallScenario);
  RunResult r = run_cli(
      "sweep-horizon --scenario " + scenario.string() + " --out " + (dir / "out").string(), dir);
  CHECK(r.exit_code == 0);

  std::ifstream csv(dir / "out" / "sweep.csv");
  REQUIRE(csv.good());
  std::string line;
  std::getline(csv, line);  // header
  std::vector<double> horizons, costs;
  while (std::getline(csv, line)) {
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    horizons.push_back(std::stod(cell));
    std::getline(ss, cell, ',');
    costs.push_back(std::stod(cell));
  }
  REQUIRE(horizons.size() == 3);
  CHECK(horizons[1] == 2.0 * horizons[0]);
  CHECK(horizons[2] == 4.0 * horizons[0]);
  const double d1 = std::abs(costs[1] - costs[0]);
  const double d2 = std::abs(costs[2] - costs[1]);
  CHECK(d2 <= d1);
}

TEST_CASE("verify suite runs green end to end") {
  fs::path dir = fresh_dir("verify");
  fs::path scenario = write_scenario(dir, kSmallScenario);
  RunResult r = run_cli(
      "verify --scenario " + scenario.string() + " --seed 0 --out " + (dir / "out").string(), dir);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find(": fail") == std::string::npos);
  CHECK(fs::exists(dir / "out" / "verify.csv"));
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s [doctest options] <path-to-cli>\n", argv[0]);
    return 1;
  }
  g_cli_path = argv[argc - 1];

  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv);
  return ctx.run();
}
