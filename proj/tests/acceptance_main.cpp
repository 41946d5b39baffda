#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "linkagelab/acceptance.hpp"

// Runs the acceptance criteria and prints one verdict line per criterion.
// Arguments, if given, restrict the run to those criterion ids.
int main(int argc, char** argv) {
    linkagelab::AcceptanceOptions opt;
    opt.jobs = std::min(4u, std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("LINKAGELAB_JOBS")) opt.jobs = std::atoi(env);
    for (int i = 1; i < argc; ++i) opt.only.push_back(std::atoi(argv[i]));

    std::vector<linkagelab::CriterionResult> results = linkagelab::run_acceptance(opt);
    bool all = !results.empty();
    for (const auto& r : results) {
        all = all && r.passed;
        std::printf("criterion %2d %-22s %s (%.2f s) %s\n", r.id, r.name.c_str(),
                    r.passed ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
    }
    std::fflush(stdout);
    return all ? 0 : 1;
}
