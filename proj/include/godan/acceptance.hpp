#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace godan {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    long millis = 0;
};

struct AcceptanceOptions {
    int jobs = 0;          // 0: hardware concurrency
    uint64_t seed = 20240601;
    bool verbose = true;
};

// Runs the full acceptance suite; prints one pass/fail line per criterion to
// log (when given) and returns the structured results.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream* log);

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace godan
