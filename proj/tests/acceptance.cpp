// Acceptance gate: runs every criterion at its stated scale and prints one
// pass/fail line per criterion. Exits nonzero when any criterion fails.

#include <iostream>

#include "godan/acceptance.hpp"

int main() {
    godan::AcceptanceOptions opts;
    const auto results = godan::run_acceptance(opts, &std::cout);
    const bool ok = godan::all_pass(results);
    std::cout << (ok ? "ACCEPTANCE: ALL CRITERIA PASS" : "ACCEPTANCE: FAILURES PRESENT")
              << std::endl;
    return ok ? 0 : 1;
}
