// Runs every verification criterion, including the slow time-domain
// cross-validation, and prints one line per criterion as it completes.
// Exit status is the number of failing criteria.

#include <cstdio>

#include "etk/acceptance.hpp"

int main() {
  int failures = 0;
  int total = 0;
  for (const auto& name : etk::criterion_names()) {
    for (const auto& r : etk::run_acceptance(true, name)) {
      const char* tag = !r.ran ? "SKIP" : r.passed ? "PASS" : "FAIL";
      std::printf("[%s] %2d %-12s %s\n", tag, r.id, r.name.c_str(),
                  r.detail.c_str());
      std::fflush(stdout);
      ++total;
      if (r.ran && !r.passed) {
        ++failures;
      }
    }
  }
  std::printf("%d/%d criteria passed\n", total - failures, total);
  return failures;
}
