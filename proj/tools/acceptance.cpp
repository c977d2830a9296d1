// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fail.
#include <iostream>

#include "dhzero/acceptance.hpp"

int main() {
  int failed = 0;
  double total = 0.0;
  dhzero::acceptance::run_all([&](const dhzero::acceptance::CriterionResult& r) {
    std::cout << dhzero::acceptance::format_line(r) << "  (" << static_cast<int>(r.seconds + 0.5) << " s)"
              << std::endl;
    total += r.seconds;
    if (!r.pass) ++failed;
  });
  std::cout << (failed == 0 ? "ALL PASS" : "FAILURES: " + std::to_string(failed)) << " in "
            << static_cast<int>(total + 0.5) << " s" << std::endl;
  return failed == 0 ? 0 : 1;
}
