// Runs the ten acceptance checks and prints one pass/fail line per check.
// Exit status is 0 only if every check passes.

#include <cstdio>

#include "dixlab/acceptance.hpp"

int main() {
  int failures = 0;
  for (const dixlab::AcceptanceResult& r : dixlab::run_acceptance()) {
    std::printf("[%s] %2d %-34s %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str(), r.seconds);
    if (!r.pass) ++failures;
  }
  std::printf("%d/10 acceptance checks passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
