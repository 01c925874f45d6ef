#pragma once

// Ground-truth references: exact maximum-weight matching (blossom, cross-
// checked by brute force on small graphs), an exact LP optimum over the full
// matching polytope via the rational simplex, and a Frank-Wolfe reference
// maximizer for the entropy objective.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "decmatch/blossom.hpp"
#include "decmatch/entropy.hpp"
#include "decmatch/errors.hpp"
#include "decmatch/graph.hpp"
#include "decmatch/simplex.hpp"

namespace decmatch {

struct MatchingResult {
    std::vector<EdgeId> edges;
    std::vector<int> mate;  // partner vertex or -1
    double weight = 0.0;
};

// Exact maximum-weight matching of the alive subgraph under per-edge weights.
inline MatchingResult exact_mwm(const DynamicGraph& g, const std::vector<double>& weights) {
    std::vector<WeightedEdgeIn> in;
    std::vector<EdgeId> ids;
    in.reserve(static_cast<size_t>(g.alive_count()));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!g.alive(e)) continue;
        double w = weights[static_cast<size_t>(e)];
        if (w <= 0.0) continue;
        in.push_back({g.edge(e).u, g.edge(e).v, w});
        ids.push_back(e);
    }
    MaxWeightMatcher matcher(g.vertex_count(), in);
    MatchingResult res;
    res.mate = matcher.mate();
    for (size_t k = 0; k < in.size(); ++k) {
        int u = in[k].u;
        int v = in[k].v;
        if (res.mate[static_cast<size_t>(u)] == v) {
            res.edges.push_back(ids[k]);
            res.weight += in[k].w;
        }
    }
    return res;
}

inline MatchingResult exact_mwm(const DynamicGraph& g) {
    return exact_mwm(g, edge_weights(g));
}

// Exhaustive matching enumeration; the independent cross-check for blossom.
inline double brute_force_mwm_weight(const DynamicGraph& g, const std::vector<double>& weights,
                                     int max_n = 16) {
    if (g.vertex_count() > max_n)
        throw std::invalid_argument("brute_force_mwm_weight: graph too large");
    std::vector<EdgeId> alive;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (g.alive(e)) alive.push_back(e);
    double best = 0.0;
    std::vector<char> used(static_cast<size_t>(g.vertex_count()), 0);
    std::function<void(size_t, double)> rec = [&](size_t idx, double acc) {
        best = std::max(best, acc);
        for (size_t k = idx; k < alive.size(); ++k) {
            const Edge& ed = g.edge(alive[k]);
            if (used[static_cast<size_t>(ed.u)] || used[static_cast<size_t>(ed.v)]) continue;
            used[static_cast<size_t>(ed.u)] = used[static_cast<size_t>(ed.v)] = 1;
            rec(k + 1, acc + weights[static_cast<size_t>(alive[k])]);
            used[static_cast<size_t>(ed.u)] = used[static_cast<size_t>(ed.v)] = 0;
        }
    };
    rec(0, 0.0);
    return best;
}

inline double brute_force_mwm_weight(const DynamicGraph& g, int max_n = 16) {
    return brute_force_mwm_weight(g, edge_weights(g), max_n);
}

// Exact max w'x over the full matching polytope M_G, by enumerating every
// odd-set constraint and solving the LP with the rational simplex. Tiny
// instances only; this is the second route of the blossom/LP pair.
inline double brute_fractional_opt(const DynamicGraph& g, int max_n = 8) {
    int n = g.vertex_count();
    if (n > max_n) throw std::invalid_argument("brute_fractional_opt: n exceeds limit");
    std::vector<EdgeId> alive;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (g.alive(e)) alive.push_back(e);
    size_t nv = alive.size();
    if (nv == 0) return 0.0;

    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (VertexId v = 0; v < n; ++v) {
        std::vector<Rational> row(nv, Rational(0));
        bool any = false;
        for (size_t k = 0; k < nv; ++k) {
            const Edge& ed = g.edge(alive[k]);
            if (ed.u == v || ed.v == v) {
                row[k] = Rational(1);
                any = true;
            }
        }
        if (any) {
            a.push_back(std::move(row));
            b.emplace_back(1);
        }
    }
    enumerate_odd_sets(g, n, [&](const std::vector<VertexId>& members) {
        OddSet set(members);
        std::vector<Rational> row(nv, Rational(0));
        bool any = false;
        for (size_t k = 0; k < nv; ++k) {
            const Edge& ed = g.edge(alive[k]);
            if (set.contains(ed.u) && set.contains(ed.v)) {
                row[k] = Rational(1);
                any = true;
            }
        }
        if (any) {
            a.push_back(std::move(row));
            b.emplace_back(set.capacity());
        }
    });
    std::vector<Rational> c;
    c.reserve(nv);
    for (EdgeId e : alive) c.emplace_back(BigInt(g.edge(e).w));
    LpResult lp = solve_lp_max(a, b, c);
    if (!lp.bounded) throw ContractError("brute_fractional_opt: LP unbounded");
    return rational_to_double(lp.value);
}

struct FrankWolfeResult {
    FractionalAssignment x;
    double objective = 0.0;
    double gap = 0.0;  // last duality-gap certificate max_M grad'(1_M - x)
    int iterations = 0;
    std::vector<double> gap_history;
};

struct FrankWolfeOptions {
    double gap_target = 0.0;      // absolute; 0 disables early stop
    double gradient_floor = 1e-15;
    bool record_gaps = false;
};

// Conditional-gradient reference maximizer of the entropy objective over
// M_G. The linear-maximization oracle is exact_mwm on gradient weights; step
// size 2/(t+2). Iteration 1 is the exact max-weight matching vertex (the
// ascent direction from 0 under the linear term). The reported gap is the
// standard certificate, so objective(x*) <= objective(x) + gap.
inline FrankWolfeResult frank_wolfe_entropy(const DynamicGraph& g, const EntropyParams& p,
                                            int iters, const FrankWolfeOptions& opts = {}) {
    p.validate();
    if (iters < 1) throw std::invalid_argument("frank_wolfe_entropy: iters >= 1");
    FrankWolfeResult res;
    res.x = FractionalAssignment(g.edge_count());
    if (g.alive_count() == 0) return res;

    std::vector<double> w = edge_weights(g);
    MatchingResult first = exact_mwm(g);
    for (EdgeId e : first.edges) res.x.set(e, 1.0);
    res.iterations = 1;

    std::vector<double> grad(static_cast<size_t>(g.edge_count()), 0.0);
    for (int t = 1; t < iters; ++t) {
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            grad[static_cast<size_t>(e)] =
                g.alive(e) ? edge_objective_gradient(w[static_cast<size_t>(e)], res.x[e], p,
                                                     opts.gradient_floor)
                           : 0.0;
        MatchingResult vert = exact_mwm(g, grad);
        double gap = 0.0;
        for (EdgeId e : vert.edges) gap += grad[static_cast<size_t>(e)];
        res.x.for_each_nonzero([&](EdgeId e, double xe) { gap -= grad[static_cast<size_t>(e)] * xe; });
        res.gap = gap;
        if (opts.record_gaps) res.gap_history.push_back(gap);
        if (opts.gap_target > 0.0 && gap <= opts.gap_target) break;

        double alpha = 2.0 / (static_cast<double>(t) + 2.0);
        std::vector<char> in_vert(static_cast<size_t>(g.edge_count()), 0);
        for (EdgeId e : vert.edges) in_vert[static_cast<size_t>(e)] = 1;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            double target = in_vert[static_cast<size_t>(e)] ? 1.0 : 0.0;
            double nv = (1.0 - alpha) * res.x[e] + alpha * target;
            if (nv < 1e-300) nv = 0.0;
            res.x.set(e, nv);
        }
        res.iterations = t + 1;
    }
    res.objective = objective(g, res.x, p).total;
    return res;
}

}  // namespace decmatch
