// End-to-end acceptance gate: runs the full verification suite and prints one
// line per criterion. Exits nonzero if any non-vacuous check fails.
#include <cstdio>
#include <exception>

#include "wavectrl/verify.hpp"

int main() {
  try {
    const wavectrl::VerifySuiteReport report = wavectrl::run_verify_suite(0);
    int criterion = 0;
    bool ok = true;
    for (const auto& c : report.checks) {
      ++criterion;
      const char* status = "PASS";
      if (c.status == wavectrl::CheckStatus::fail) {
        status = "FAIL";
        ok = false;
      } else if (c.status == wavectrl::CheckStatus::vacuous) {
        status = "PASS (vacuous)";
      }
      std::printf("criterion %2d %-28s %s (measured %.6g, tolerance %.6g)%s%s\n", criterion,
                  c.name.c_str(), status, c.measured, c.tolerance,
                  c.detail.empty() ? "" : " -- ", c.detail.c_str());
    }
    std::printf("acceptance: %d criteria, %s\n", criterion, ok ? "all satisfied" : "FAILURES");
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: aborted: %s\n", e.what());
    return 2;
  }
}
