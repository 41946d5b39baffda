#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "linkagelab/graph.hpp"
#include "linkagelab/linkage.hpp"

namespace linkagelab {

// Erdos-Renyi samplers; deterministic per seed.
Graph sample_gnp(int k, double p, std::uint64_t seed);
Graph sample_gnm(int k, long long m, std::uint64_t seed);

// Uniform random matching covering all of [k] except one vertex when k is odd.
Matching random_near_perfect_matching(int k, Rng& rng);

enum class TrialOutcome { Success, Failure, Inconclusive };

struct ExperimentReport {
    int k = 0;
    std::optional<double> p;
    std::optional<long long> m;
    int r = 1;
    long long trials = 0, successes = 0, failures = 0, inconclusive = 0;
    std::vector<std::uint64_t> trial_seeds;
    double rate = 0, wilson_low = 0, wilson_high = 1;  // 95% Wilson interval
};

// One trial: a random equipartition of the matching into r parts (sizes
// differ by at most 1); success iff every part routes uncongested in h.
// NotFound on any part is a failure; otherwise a budget hit on any part
// makes the trial inconclusive.
TrialOutcome equipartition_trial(const Graph& h, const Matching& matching, int r, Rng& rng,
                                 long long budget);

// Fixed (h, matching); only the equipartition is random per trial.
ExperimentReport equipartition_experiment(const Graph& h, const Matching& matching, int r,
                                          long long trials, std::uint64_t seed,
                                          long long budget = 2'000'000, int jobs = 1);

// Orchestrated experiment: per trial a fresh H (G(k,p) or G(k,m) when m is
// set), a fresh random near-perfect matching, and a random equipartition.
ExperimentReport random_linkage_experiment(int k, std::optional<double> p,
                                           std::optional<long long> m, int r, long long trials,
                                           std::uint64_t seed, long long budget = 2'000'000,
                                           int jobs = 1);

// Sweeps r' = 1, 2, ... and returns k/(3*2r') for the smallest r' whose
// sampled matchings on the first clone layer all route uncongested in
// H (x) J_{2r'}; trivial bound 1 when no r' works. Empirical, never a
// certificate.
CapacityBound estimate_random_capacity(int k, double p, long long trials, std::uint64_t seed,
                                       int r_max = 6, long long budget = 2'000'000);

}  // namespace linkagelab
