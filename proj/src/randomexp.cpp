#include "linkagelab/randomexp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "linkagelab/blowup.hpp"

namespace linkagelab {

Graph sample_gnp(int k, double p, std::uint64_t seed) {
    require(k >= 0, "vertex count must be >= 0");
    require(p >= 0.0 && p <= 1.0, "edge probability must lie in [0, 1]");
    Rng rng(seed);
    Graph g(k);
    for (int u = 0; u < k; ++u) {
        for (int v = u + 1; v < k; ++v) {
            if (rng.coin(p)) g.add_edge(u, v);
        }
    }
    return g;
}

Graph sample_gnm(int k, long long m, std::uint64_t seed) {
    require(k >= 0, "vertex count must be >= 0");
    long long all = static_cast<long long>(k) * (k - 1) / 2;
    require(m >= 0 && m <= all, "edge count must lie in [0, C(k,2)]");
    std::vector<Edge> pairs;
    pairs.reserve(all);
    for (int u = 0; u < k; ++u) {
        for (int v = u + 1; v < k; ++v) pairs.push_back({u, v});
    }
    Rng rng(seed);
    Graph g(k);
    for (long long i = 0; i < m; ++i) {
        std::size_t j = i + rng.below(pairs.size() - i);
        std::swap(pairs[i], pairs[j]);
        g.add_edge(pairs[i].first, pairs[i].second);
    }
    return g;
}

Matching random_near_perfect_matching(int k, Rng& rng) {
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    Matching m;
    for (int i = 0; i + 1 < k; i += 2) m.push_back(make_edge(order[i], order[i + 1]));
    return m;
}

TrialOutcome equipartition_trial(const Graph& h, const Matching& matching, int r, Rng& rng,
                                 long long budget) {
    require(r >= 1, "need at least one part");
    Matching pool = matching;
    rng.shuffle(pool);
    long long base = static_cast<long long>(pool.size()) / r;
    long long extra = static_cast<long long>(pool.size()) % r;
    bool inconclusive = false;
    std::size_t at = 0;
    for (int i = 0; i < r; ++i) {
        std::size_t len = static_cast<std::size_t>(base + (i < extra ? 1 : 0));
        Matching part(pool.begin() + at, pool.begin() + at + len);
        at += len;
        auto res = find_linkage_backtracking(h, part, budget);
        if (res.status == RouteStatus::NotFound) return TrialOutcome::Failure;
        if (res.status == RouteStatus::BudgetExceeded) inconclusive = true;
    }
    return inconclusive ? TrialOutcome::Inconclusive : TrialOutcome::Success;
}

namespace {

void fill_wilson(ExperimentReport& rep) {
    long long decided = rep.successes + rep.failures;
    if (decided == 0) {
        rep.rate = 0;
        rep.wilson_low = 0;
        rep.wilson_high = 1;
        return;
    }
    const double z = 1.96;
    double n = static_cast<double>(decided);
    double ph = static_cast<double>(rep.successes) / n;
    double denom = 1.0 + z * z / n;
    double center = (ph + z * z / (2 * n)) / denom;
    double half = z * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / denom;
    rep.rate = ph;
    rep.wilson_low = std::max(0.0, center - half);
    rep.wilson_high = std::min(1.0, center + half);
}

ExperimentReport aggregate(int k, std::optional<double> p, std::optional<long long> m, int r,
                           const std::vector<TrialOutcome>& outcomes,
                           std::vector<std::uint64_t> seeds) {
    ExperimentReport rep;
    rep.k = k;
    rep.p = p;
    rep.m = m;
    rep.r = r;
    rep.trials = static_cast<long long>(outcomes.size());
    for (auto o : outcomes) {
        if (o == TrialOutcome::Success) ++rep.successes;
        else if (o == TrialOutcome::Failure) ++rep.failures;
        else ++rep.inconclusive;
    }
    rep.trial_seeds = std::move(seeds);
    fill_wilson(rep);
    return rep;
}

}  // namespace

ExperimentReport equipartition_experiment(const Graph& h, const Matching& matching, int r,
                                          long long trials, std::uint64_t seed, long long budget,
                                          int jobs) {
    require(trials >= 0, "trial count must be >= 0");
    require_matching(matching, h.n());
    std::vector<TrialOutcome> outcomes(trials);
    std::vector<std::uint64_t> seeds(trials);
    for (long long i = 0; i < trials; ++i) seeds[i] = derive_seed(seed, static_cast<std::uint64_t>(i));
    parallel_for(static_cast<std::size_t>(trials), jobs, [&](std::size_t i) {
        Rng rng(seeds[i]);
        outcomes[i] = equipartition_trial(h, matching, r, rng, budget);
    });
    return aggregate(h.n(), std::nullopt, std::nullopt, r, outcomes, std::move(seeds));
}

ExperimentReport random_linkage_experiment(int k, std::optional<double> p,
                                           std::optional<long long> m, int r, long long trials,
                                           std::uint64_t seed, long long budget, int jobs) {
    require(trials >= 0, "trial count must be >= 0");
    require(p.has_value() != m.has_value(), "exactly one of p and m must be set");
    std::vector<TrialOutcome> outcomes(trials);
    std::vector<std::uint64_t> seeds(trials);
    for (long long i = 0; i < trials; ++i) seeds[i] = derive_seed(seed, static_cast<std::uint64_t>(i));
    parallel_for(static_cast<std::size_t>(trials), jobs, [&](std::size_t i) {
        Graph h = p ? sample_gnp(k, *p, derive_seed(seeds[i], 1))
                    : sample_gnm(k, *m, derive_seed(seeds[i], 1));
        Rng rng(derive_seed(seeds[i], 2));
        Matching matching = random_near_perfect_matching(k, rng);
        outcomes[i] = equipartition_trial(h, matching, r, rng, budget);
    });
    return aggregate(k, p, m, r, outcomes, std::move(seeds));
}

CapacityBound estimate_random_capacity(int k, double p, long long trials, std::uint64_t seed,
                                       int r_max, long long budget) {
    require(k >= 1 && trials >= 1 && r_max >= 1, "need k, trials, r_max >= 1");
    Graph h = sample_gnp(k, p, derive_seed(seed, 0));
    for (int rp = 1; rp <= r_max; ++rp) {
        Graph blown = blowup(h, 2 * rp);
        BlowupMap bm{2 * rp};
        bool all_ok = true;
        for (long long i = 0; i < trials && all_ok; ++i) {
            Rng rng(derive_seed(seed, 1 + static_cast<std::uint64_t>(rp) * 1000003 + i));
            Matching base = random_near_perfect_matching(k, rng);
            Matching lifted;
            for (auto [u, v] : base) lifted.push_back(make_edge(bm.encode(u, 0), bm.encode(v, 0)));
            auto res = find_linkage_backtracking(blown, lifted, budget);
            all_ok = res.status == RouteStatus::Found;
        }
        if (all_ok) return make_capacity_bound(Rational(k, 6 * rp), "empirical", false);
    }
    return make_capacity_bound(Rational(0), "empirical", false);
}

}  // namespace linkagelab
