#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "linkagelab/randomexp.hpp"
#include "linkagelab/util.hpp"

using namespace linkagelab;

TEST_CASE("gnp sampling") {
    Graph a = sample_gnp(12, 0.5, 99);
    Graph b = sample_gnp(12, 0.5, 99);
    CHECK(a.same_edge_set(b));
    CHECK(!sample_gnp(12, 0.5, 100).same_edge_set(a));

    CHECK(sample_gnp(10, 0.0, 1).m() == 0);
    CHECK(sample_gnp(10, 1.0, 1).m() == 45);
}

TEST_CASE("gnm sampling") {
    Graph g = sample_gnm(10, 17, 5);
    CHECK(g.m() == 17);
    std::set<Edge> distinct(g.edges().begin(), g.edges().end());
    CHECK(distinct.size() == 17);
    CHECK(sample_gnm(10, 17, 5).same_edge_set(g));
    CHECK(sample_gnm(4, 6, 3).m() == 6);
    CHECK_THROWS_AS(sample_gnm(4, 7, 3), std::invalid_argument);
}

TEST_CASE("near-perfect matchings") {
    Rng rng(1);
    for (int k : {2, 5, 8, 13}) {
        Matching m = random_near_perfect_matching(k, rng);
        CHECK(static_cast<int>(m.size()) == k / 2);
        std::set<int> used;
        for (auto [u, v] : m) {
            CHECK(u >= 0);
            CHECK(v < k);
            used.insert(u);
            used.insert(v);
        }
        CHECK(static_cast<int>(used.size()) == 2 * (k / 2));
    }
}

TEST_CASE("equipartition trials") {
    Graph k6 = sample_gnp(6, 1.0, 1);
    Rng rng(2);
    Matching m = {{0, 1}, {2, 3}, {4, 5}};
    for (int r : {1, 2, 3})
        CHECK(equipartition_trial(k6, m, r, rng, 100000) == TrialOutcome::Success);

    Graph empty6(6);
    CHECK(equipartition_trial(empty6, m, 1, rng, 100000) == TrialOutcome::Failure);
}

TEST_CASE("fixed-instance experiment is deterministic") {
    Graph h = sample_gnp(10, 0.6, 7);
    Matching m = {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}};
    ExperimentReport a = equipartition_experiment(h, m, 2, 40, 123);
    ExperimentReport b = equipartition_experiment(h, m, 2, 40, 123);
    CHECK(a.successes == b.successes);
    CHECK(a.failures == b.failures);
    CHECK(a.trial_seeds == b.trial_seeds);
    CHECK(a.trials == 40);
    CHECK(a.successes + a.failures + a.inconclusive == 40);
    CHECK(a.trial_seeds.size() == 40);

    ExperimentReport par = equipartition_experiment(h, m, 2, 40, 123, 2'000'000, 4);
    CHECK(par.successes == a.successes);
    CHECK(par.inconclusive == a.inconclusive);
}

TEST_CASE("orchestrated experiment extremes") {
    ExperimentReport sure = random_linkage_experiment(8, 1.0, std::nullopt, 1, 30, 9);
    CHECK(sure.successes == 30);
    CHECK(sure.rate == 1.0);
    CHECK(sure.wilson_low > 0.85);
    CHECK(sure.wilson_high == 1.0);

    ExperimentReport never = random_linkage_experiment(6, 0.0, std::nullopt, 1, 30, 9);
    CHECK(never.successes == 0);
    CHECK(never.failures == 30);
    CHECK(never.rate == 0.0);
    CHECK(never.wilson_low == 0.0);
    CHECK(never.wilson_high < 0.15);

    ExperimentReport viam = random_linkage_experiment(8, std::nullopt, 12, 2, 20, 11);
    CHECK(viam.m.has_value());
    CHECK(viam.trials == 20);
    CHECK(0.0 <= viam.wilson_low);
    CHECK(viam.wilson_low <= viam.wilson_high);
    CHECK(viam.wilson_high <= 1.0);
}

TEST_CASE("experiments reject contradictory densities") {
    CHECK_THROWS_AS(random_linkage_experiment(6, 0.5, 7, 1, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_linkage_experiment(6, std::nullopt, std::nullopt, 1, 5, 1),
                    std::invalid_argument);
}

TEST_CASE("capacity estimation sweep") {
    CapacityBound dense = estimate_random_capacity(6, 1.0, 8, 21);
    CHECK(dense.raw == Rational(1));  // first sweep radius already routes
    CHECK(dense.provenance == "empirical");
    CHECK(!dense.certified);

    CapacityBound sparse = estimate_random_capacity(4, 0.0, 4, 21, 2);
    CHECK(sparse.raw == 0);
    CHECK(sparse.value == 1);
}
