#include "linkagelab/flow.hpp"

#include <algorithm>

namespace linkagelab {

namespace {

void paths_dfs(const Graph& h, int cur, int to, std::vector<int>& stack, std::vector<char>& on,
               long long cap, std::vector<std::vector<int>>& out) {
    if (cur == to) {
        envelope(static_cast<long long>(out.size()) < cap, "path enumeration cap exceeded");
        out.push_back(stack);
        return;
    }
    for (int nb : h.neighbors(cur)) {
        if (on[nb]) continue;
        on[nb] = 1;
        stack.push_back(nb);
        paths_dfs(h, nb, to, stack, on, cap, out);
        stack.pop_back();
        on[nb] = 0;
    }
}

}  // namespace

std::vector<std::vector<int>> enumerate_paths(const Graph& h, int u, int v, long long cap) {
    require(u >= 0 && u < h.n() && v >= 0 && v < h.n() && u != v, "need two distinct vertices");
    std::vector<std::vector<int>> out;
    std::vector<int> stack{u};
    std::vector<char> on(h.n(), 0);
    on[u] = 1;
    paths_dfs(h, u, v, stack, on, cap, out);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Dense-basis primal simplex over exact rationals for max c x, A x <= b,
// x >= 0 with b >= 0 (slack basis feasible).  Columns are sparse.
struct Simplex {
    int m = 0;
    std::vector<std::vector<std::pair<int, Rational>>> cols;
    std::vector<Rational> obj;
    std::vector<Rational> rhs;

    std::vector<Rational> x;   // structural solution
    std::vector<Rational> y;   // duals
    Rational value;
    long long pivots = 0;

    int n_struct() const { return static_cast<int>(cols.size()); }

    // Column entries of variable id (structural first, then slack j).
    void column(int id, std::vector<Rational>& dense) const {
        std::fill(dense.begin(), dense.end(), Rational(0));
        if (id < n_struct()) {
            for (auto& [r, a] : cols[id]) dense[r] += a;
        } else {
            dense[id - n_struct()] = 1;
        }
    }

    Rational objective(int id) const { return id < n_struct() ? obj[id] : Rational(0); }

    Rational reduced_cost(int id, const std::vector<Rational>& duals) const {
        Rational d = objective(id);
        if (id < n_struct()) {
            for (auto& [r, a] : cols[id]) d -= duals[r] * a;
        } else {
            d -= duals[id - n_struct()];
        }
        return d;
    }

    void solve(PivotRule rule) {
        int n = n_struct();
        std::vector<int> basis(m);
        std::vector<char> in_basis(n + m, 0);
        for (int i = 0; i < m; ++i) {
            basis[i] = n + i;
            in_basis[n + i] = 1;
        }
        std::vector<std::vector<Rational>> binv(m, std::vector<Rational>(m, Rational(0)));
        for (int i = 0; i < m; ++i) binv[i][i] = 1;
        std::vector<Rational> xb = rhs;
        std::vector<Rational> duals(m), dense(m), dir(m);

        const long long dantzig_limit = 20000;  // then fall back to Bland (no cycling)
        const long long hard_limit = 2000000;
        for (;;) {
            check(++pivots <= hard_limit, "simplex iteration limit hit");
            bool bland = rule == PivotRule::Bland || pivots > dantzig_limit;
            for (int i = 0; i < m; ++i) {
                duals[i] = 0;
                for (int k = 0; k < m; ++k) {
                    const Rational& cb = objective(basis[k]);
                    if (!cb.is_zero()) duals[i] += cb * binv[k][i];
                }
            }
            int enter = -1;
            Rational best(0);
            for (int id = 0; id < n + m; ++id) {
                if (in_basis[id]) continue;
                Rational d = reduced_cost(id, duals);
                if (d > 0) {
                    if (bland) {
                        enter = id;
                        break;
                    }
                    if (enter < 0 || d > best) {
                        enter = id;
                        best = d;
                    }
                }
            }
            if (enter < 0) break;  // optimal

            column(enter, dense);
            for (int i = 0; i < m; ++i) {
                dir[i] = 0;
                for (int k = 0; k < m; ++k) {
                    if (!dense[k].is_zero()) dir[i] += binv[i][k] * dense[k];
                }
            }
            int leave = -1;
            Rational theta(0);
            for (int i = 0; i < m; ++i) {
                if (dir[i] > 0) {
                    Rational t = xb[i] / dir[i];
                    if (leave < 0 || t < theta || (t == theta && basis[i] < basis[leave])) {
                        leave = i;
                        theta = t;
                    }
                }
            }
            check(leave >= 0, "LP unbounded; capacity rows should prevent this");

            Rational piv = dir[leave];
            for (int k = 0; k < m; ++k) binv[leave][k] /= piv;
            xb[leave] /= piv;
            for (int i = 0; i < m; ++i) {
                if (i == leave || dir[i].is_zero()) continue;
                for (int k = 0; k < m; ++k) binv[i][k] -= dir[i] * binv[leave][k];
                xb[i] -= dir[i] * xb[leave];
            }
            in_basis[basis[leave]] = 0;
            in_basis[enter] = 1;
            basis[leave] = enter;
        }

        x.assign(n, Rational(0));
        value = 0;
        for (int i = 0; i < m; ++i) {
            check(xb[i] >= 0, "infeasible basic solution");
            if (basis[i] < n) {
                x[basis[i]] = xb[i];
                value += obj[basis[i]] * xb[i];
            }
        }
        y = duals;
        certify();
    }

    // Independent optimality certificate: exact primal feasibility, dual
    // feasibility, and zero duality gap.
    void certify() const {
        std::vector<Rational> row_load(m, Rational(0));
        for (int j = 0; j < n_struct(); ++j) {
            check(x[j] >= 0, "negative primal variable");
            if (x[j].is_zero()) continue;
            for (auto& [r, a] : cols[j]) row_load[r] += a * x[j];
        }
        for (int i = 0; i < m; ++i) check(row_load[i] <= rhs[i], "primal constraint violated");
        Rational dual_value(0);
        for (int i = 0; i < m; ++i) {
            check(y[i] >= 0, "negative dual");
            dual_value += y[i] * rhs[i];
        }
        for (int j = 0; j < n_struct(); ++j) {
            Rational slack = -obj[j];
            for (auto& [r, a] : cols[j]) slack += y[r] * a;
            check(slack >= 0, "dual constraint violated");
        }
        check(dual_value == value, "duality gap nonzero");
    }
};

}  // namespace

FlowSolution solve_concurrent_flow(const Graph& h, std::vector<int> terminals, PivotRule rule,
                                   long long per_pair_cap) {
    std::sort(terminals.begin(), terminals.end());
    require(!terminals.empty(), "need at least one terminal");
    require(std::adjacent_find(terminals.begin(), terminals.end()) == terminals.end(),
            "terminals must be distinct");
    for (int w : terminals) require(w >= 0 && w < h.n(), "terminal out of range");

    FlowSolution sol;
    sol.terminals = terminals;
    int t = static_cast<int>(terminals.size());
    for (int i = 0; i < t; ++i) {
        for (int j = i + 1; j < t; ++j) sol.pairs.push_back({i, j});
    }
    long long total_vars = 1;
    for (auto [i, j] : sol.pairs) {
        sol.pair_paths.push_back(enumerate_paths(h, terminals[i], terminals[j], per_pair_cap));
        total_vars += static_cast<long long>(sol.pair_paths.back().size());
        envelope(total_vars <= 400000, "too many path variables");
    }

    // Rows: capacities per vertex of h, then one demand row per commodity
    // (pairs first, diagonals last).
    Simplex lp;
    lp.m = h.n() + static_cast<int>(sol.pairs.size()) + t;
    lp.rhs.assign(lp.m, Rational(1));
    for (int r = h.n(); r < lp.m; ++r) lp.rhs[r] = 0;

    // eps is column 0.
    {
        std::vector<std::pair<int, Rational>> eps_col;
        for (int r = h.n(); r < lp.m; ++r) eps_col.push_back({r, Rational(1)});
        lp.cols.push_back(std::move(eps_col));
        lp.obj.push_back(Rational(1));
    }
    std::vector<std::pair<int, int>> var_home;  // (pair index or t-index offset, path index)
    for (std::size_t pi = 0; pi < sol.pairs.size(); ++pi) {
        for (std::size_t k = 0; k < sol.pair_paths[pi].size(); ++k) {
            std::vector<std::pair<int, Rational>> col;
            col.push_back({h.n() + static_cast<int>(pi), Rational(-1)});
            for (int v : sol.pair_paths[pi][k]) col.push_back({v, Rational(2)});
            lp.cols.push_back(std::move(col));
            lp.obj.push_back(Rational(0));
            var_home.push_back({static_cast<int>(pi), static_cast<int>(k)});
        }
    }
    int diag_row0 = h.n() + static_cast<int>(sol.pairs.size());
    for (int i = 0; i < t; ++i) {
        std::vector<std::pair<int, Rational>> col;
        col.push_back({diag_row0 + i, Rational(-1)});
        col.push_back({terminals[i], Rational(1)});
        lp.cols.push_back(std::move(col));
        lp.obj.push_back(Rational(0));
    }
    sol.variables = lp.n_struct();
    lp.solve(rule);

    sol.eps = lp.value;
    sol.pivots = lp.pivots;
    sol.pair_values.resize(sol.pairs.size());
    for (std::size_t pi = 0; pi < sol.pairs.size(); ++pi) {
        sol.pair_values[pi].assign(sol.pair_paths[pi].size(), Rational(0));
    }
    for (std::size_t v = 0; v < var_home.size(); ++v) {
        sol.pair_values[var_home[v].first][var_home[v].second] = lp.x[v + 1];
    }
    sol.diag_values.assign(t, Rational(0));
    for (int i = 0; i < t; ++i) sol.diag_values[i] = lp.x[lp.n_struct() - t + i];

    check(sol.eps >= 0, "negative optimum");
    if (t >= 2) check(sol.eps * t <= 1, "eps exceeds 1/|W|");
    if (t == 1) check(sol.eps == 1, "singleton terminal set must give eps = 1");
    return sol;
}

namespace {

long long to_ll(const Integer& v, const char* what) {
    envelope(v <= 1'000'000'000LL, std::string(what) + " too large for this build");
    return v.convert_to<long long>();
}

}  // namespace

CongestedCliqueLinkage integralize(const FlowSolution& sol) {
    Integer denom(1);
    denom = lcm_int(denom, Integer(boost::multiprecision::denominator(sol.eps)));
    for (const auto& vals : sol.pair_values) {
        for (const auto& v : vals) denom = lcm_int(denom, Integer(boost::multiprecision::denominator(v)));
    }
    for (const auto& v : sol.diag_values) {
        denom = lcm_int(denom, Integer(boost::multiprecision::denominator(v)));
    }
    CongestedCliqueLinkage cc;
    cc.terminals = sol.terminals;
    cc.pairs = sol.pairs;
    cc.D = to_ll(denom, "denominator lcm D");
    Rational scaled_q = sol.eps * cc.D;
    check(boost::multiprecision::denominator(scaled_q) == 1, "D * eps is not integral");
    cc.q = to_ll(Integer(boost::multiprecision::numerator(scaled_q)), "q = D * eps");

    envelope(cc.q * static_cast<long long>(cc.pairs.size()) <= 2'000'000, "integral linkage too large");
    cc.paths.resize(sol.pairs.size());
    for (std::size_t pi = 0; pi < sol.pairs.size(); ++pi) {
        long long need = cc.q;
        for (std::size_t k = 0; k < sol.pair_paths[pi].size() && need > 0; ++k) {
            Rational copies_r = sol.pair_values[pi][k] * cc.D;
            check(boost::multiprecision::denominator(copies_r) == 1, "D * x not integral");
            long long copies = to_ll(Integer(boost::multiprecision::numerator(copies_r)), "path copies");
            for (long long c = 0; c < copies && need > 0; ++c, --need) {
                cc.paths[pi].push_back(sol.pair_paths[pi][k]);
            }
        }
        check(need == 0, "insufficient flow to extract q paths for a pair");
    }
    return cc;
}

CompleteRouting route_in_complete(const Multigraph& demand, long long q) {
    int t = demand.n();
    CompleteRouting out;
    if (demand.m() == 0) {
        out.edge_load_limit = 18 * std::max(q, 1LL);
        out.middle_limit = std::max(q, 1LL) * t;
        return out;
    }
    require(q >= 1, "q must be >= 1 for nonempty demand");
    require(demand.max_degree() <= q * t, "demand degree exceeds q*t");
    out.edge_load_limit = 18 * q;
    out.middle_limit = q * t;
    std::vector<std::vector<long long>> load(t, std::vector<long long>(t, 0));
    std::vector<long long> middle(t, 0);
    for (auto [a, b] : demand.edges()) {
        if (t <= 12 || load[a][b] < out.edge_load_limit) {
            ++load[a][b];
            ++load[b][a];
            out.paths.push_back({a, b});
            continue;
        }
        int x = -1;
        for (int c = 0; c < t; ++c) {
            if (c == a || c == b) continue;
            if (load[a][c] < out.edge_load_limit && load[c][b] < out.edge_load_limit &&
                middle[c] < out.middle_limit) {
                x = c;
                break;
            }
        }
        check(x >= 0, "no middle vertex available; counting bound violated");
        ++load[a][x];
        ++load[x][a];
        ++load[x][b];
        ++load[b][x];
        ++middle[x];
        out.paths.push_back({a, x, b});
    }
    for (int i = 0; i < t; ++i) {
        check(middle[i] <= out.middle_limit, "middle load bound violated");
        for (int j = 0; j < t; ++j) {
            if (t > 12) check(load[i][j] <= out.edge_load_limit, "edge load bound violated");
        }
    }
    return out;
}

namespace {

// Removes cycles from a walk: whenever a vertex repeats, the portion between
// the two occurrences is dropped.  Congestion never increases.
std::vector<int> shortcut_walk(const std::vector<int>& walk, int n) {
    std::vector<int> pos(n, -1);
    std::vector<int> out;
    for (int v : walk) {
        if (pos[v] >= 0) {
            while (static_cast<int>(out.size()) > pos[v] + 1) {
                pos[out.back()] = -1;
                out.pop_back();
            }
        } else {
            pos[v] = static_cast<int>(out.size());
            out.push_back(v);
        }
    }
    return out;
}

}  // namespace

FlowWitness flow_capacity_certificate(const Graph& h, std::vector<int> terminals,
                                      const FlowCertOptions& opt) {
    auto sol = solve_concurrent_flow(h, terminals, opt.rule, opt.per_pair_cap);
    auto cc = integralize(sol);
    int t = static_cast<int>(cc.terminals.size());

    FlowWitness fw;
    fw.eps = sol.eps;
    fw.D = cc.D;
    fw.q = cc.q;
    fw.Dp = 18 * cc.D;
    fw.bound = make_capacity_bound(sol.eps * t * t / 108, "flow", true);

    if (cc.q == 0) {
        // Disconnected terminals: eps = 0, the witness degenerates to the
        // trivial bound 1 with an empty set.
        fw.witness.base = h;
        fw.witness.q = 1;
        fw.witness.router = "flow";
        fw.witness.route = [](const Matching& m) {
            check(m.empty(), "empty witness routes only the empty matching");
            return Linkage{};
        };
        fw.fully_certified = true;
        return fw;
    }

    long long s = cc.q * t;
    check(s <= cc.D, "clone count must stay within D (eps <= 1/|W|)");
    long long order = 2 * fw.Dp;
    envelope(order * h.n() <= 4'000'000, "certificate blowup too large");

    LinkedSetWitness w;
    w.base = h;
    w.q = static_cast<int>(order);
    w.router = "flow";
    BlowupMap bm{static_cast<int>(order)};
    std::vector<int> windex(h.n(), -1);
    for (int i = 0; i < t; ++i) windex[cc.terminals[i]] = i;
    for (int wi = 0; wi < t; ++wi) {
        for (long long c = 0; c < s; ++c) w.set.push_back(bm.encode(cc.terminals[wi], static_cast<int>(c)));
    }

    long long Dp = fw.Dp, q = cc.q;
    int base_n = h.n();
    Graph base = h;
    w.route = [credit = cc, windex, Dp, q, s, base, base_n, order](const Matching& m) {
        BlowupMap map{static_cast<int>(order)};
        int t = static_cast<int>(credit.terminals.size());
        std::vector<std::size_t> cross;
        Multigraph demand(t);
        for (std::size_t i = 0; i < m.size(); ++i) {
            auto [a, b] = m[i];
            int ub = map.base(a), vb = map.base(b);
            check(windex[ub] >= 0 && windex[vb] >= 0, "matching endpoint not a terminal clone");
            check(map.clone(a) < s && map.clone(b) < s, "clone index outside the witness set");
            if (ub != vb) {
                demand.add_edge(windex[ub], windex[vb]);
                cross.push_back(i);
            }
        }
        auto routed = route_in_complete(demand, q);

        std::vector<std::vector<long long>> copy_counter(t, std::vector<long long>(t, 0));
        auto pair_index = [t](int i, int j) {
            if (i > j) std::swap(i, j);
            return i * t - i * (i + 1) / 2 + (j - i - 1);
        };
        auto hop_path = [&](int from, int to) {
            int i = std::min(from, to), j = std::max(from, to);
            long long copy = copy_counter[i][j]++ % q;
            std::vector<int> p = credit.paths[pair_index(i, j)][static_cast<std::size_t>(copy)];
            if (from > to) std::reverse(p.begin(), p.end());
            return p;
        };
        std::vector<std::vector<int>> base_paths(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
            auto [a, b] = m[i];
            if (map.base(a) == map.base(b)) base_paths[i] = {map.base(a)};
        }
        for (std::size_t ci = 0; ci < cross.size(); ++ci) {
            const auto& kpath = routed.paths[ci];
            std::vector<int> walk;
            for (std::size_t hop = 0; hop + 1 < kpath.size(); ++hop) {
                auto p = hop_path(kpath[hop], kpath[hop + 1]);
                if (!walk.empty()) p.erase(p.begin());
                walk.insert(walk.end(), p.begin(), p.end());
            }
            auto path = shortcut_walk(walk, base_n);
            int want = map.base(m[cross[ci]].first);
            if (!path.empty() && path.front() != want) std::reverse(path.begin(), path.end());
            check(!path.empty() && path.front() == want, "composite walk endpoint mismatch");
            base_paths[cross[ci]] = std::move(path);
        }
        std::vector<int> visits(base_n, 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            auto [a, b] = m[i];
            if (map.base(a) == map.base(b)) continue;
            for (int v : base_paths[i]) ++visits[v];
        }
        for (int v = 0; v < base_n; ++v) check(visits[v] <= Dp, "composite congestion exceeds 18D");
        // The lift consumes the J_Dp encoding and re-encodes endpoints into
        // J_{2 Dp}; clones survive, so the lifted matching matches m exactly.
        BlowupMap inmap{static_cast<int>(Dp)};
        Matching m_in;
        for (auto [a, b] : m) {
            m_in.emplace_back(inmap.encode(map.base(a), map.clone(a)),
                              inmap.encode(map.base(b), map.clone(b)));
        }
        Linkage lifted = lift_congested_linkage(base, static_cast<int>(Dp), m_in, base_paths);
        check(lifted.matching == m, "lifted endpoints must reproduce the requested matching");
        return lifted;
    };
    fw.witness = std::move(w);

    long long n_matchings = count_maximal_matchings(static_cast<int>(fw.witness.set.size()));
    if (n_matchings <= opt.full_threshold) {
        for_each_maximal_matching(fw.witness.set, [&](const Matching& m) {
            fw.witness.route(m);
            ++fw.matchings_checked;
            return true;
        });
        fw.fully_certified = true;
    } else {
        Rng rng(opt.seed);
        for (int i = 0; i < opt.samples; ++i) {
            auto set = fw.witness.set;
            rng.shuffle(set);
            Matching m;
            for (std::size_t j = 0; j + 1 < set.size(); j += 2) m.push_back({set[j], set[j + 1]});
            fw.witness.route(m);
            ++fw.matchings_checked;
        }
        fw.fully_certified = false;
    }
    return fw;
}

}  // namespace linkagelab
