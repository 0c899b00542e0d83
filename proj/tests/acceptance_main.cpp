// Runs every acceptance criterion and prints one PASS/FAIL line for each.
#include <cstdio>

#include "ctxbounds/reproduce/acceptance.hpp"

int main() {
  using namespace ctxbounds::reproduce;
  int failed = 0;
  for (const auto& r : run_acceptance()) {
    std::printf("%s [%d] %s\n", r.pass() ? "PASS" : "FAIL", r.id, r.title.c_str());
    for (const auto& c : r.checks)
      if (!c.pass)
        std::printf("    %s: reference %s computed %s tolerance %s %s\n", c.quantity.c_str(), c.reference.c_str(),
                    c.computed.c_str(), c.tolerance.c_str(), c.note.c_str());
    if (!r.error.empty()) std::printf("    error: %s\n", r.error.c_str());
    failed += !r.pass();
  }
  std::printf("%d/%d criteria passed\n", acceptance_count() - failed, acceptance_count());
  return failed == 0 ? 0 : 1;
}
