#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace linkagelab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double seconds = 0;
    std::string detail;  // counts and pins on success, first failure otherwise
};

struct AcceptanceOptions {
    std::uint64_t seed = 2026;
    int jobs = 1;
    std::vector<int> only;  // criterion ids to run; empty = all
};

// The ten release criteria; each runs independently and never throws.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});

}  // namespace linkagelab
