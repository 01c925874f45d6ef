#pragma once

// Entropy-regularized matching solver: piecewise-linearize the concave
// objective, run the MWU framework over the split instance with the greedy
// oracle, map copies back onto host edges, and rescale to the matching
// polytope boundary.

#include <algorithm>
#include <cmath>
#include <string>

#include "decmatch/lazy.hpp"
#include "decmatch/mwu.hpp"

namespace decmatch {

struct EntropySolveConfig {
    // accuracy budget: eps' = budget_split * delta goes to the
    // linearization, the rest to the MWU loop and the perturbed polytope
    double budget_split = 0.25;
    // MWU accuracy; <= 1/16. The documented theory budget is delta/52, which
    // is not runnable at desk scale (sigma collapses); the default leans on
    // the final rescale to recover the perturbation losses instead.
    double mwu_eps = 1.0 / 16.0;
    bool rescale = true;
    MwuConfig mwu;
};

struct EntropySolveResult {
    FractionalAssignment x;
    double objective = 0.0;
    double rescale_factor = 1.0;
    MwuResult mwu;
};

// Largest uniform upscale keeping x inside M_G: degrees plus connected odd
// sets bound the ratio (a violated odd set has a violated connected
// component once degrees hold), with the scaled-down guard when the size cap
// cuts enumeration short.
inline double max_rescale_into_polytope(const DynamicGraph& g, const FractionalAssignment& x,
                                        int max_size, std::int64_t enumeration_cap = 10'000'000) {
    OddSetEnumOptions opts;
    opts.connected_only = true;
    opts.cap = enumeration_cap;
    int cap_size = std::min(g.vertex_count(), std::max(3, max_size));
    double lambda = membership_ratio(g, x, cap_size, opts);
    if (lambda <= 0.0) return 1.0;
    double guard = cap_size >= g.vertex_count() ? 1.0 + 1e-12 : 1.0 + 3.0 / cap_size;
    return 1.0 / (lambda * guard);
}

inline EntropySolveResult solve_entropy_matching(const DynamicGraph& g, const EntropyParams& p,
                                                 double delta, EntropySolveConfig cfg = {}) {
    p.validate();
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("solve_entropy_matching: delta in (0,1)");
    EntropySolveResult out;
    out.x = FractionalAssignment(g.edge_count());
    if (g.alive_count() == 0) return out;

    double eps_prime = cfg.budget_split * delta;
    SplitGraph split = piecewise_linearize(g, p, eps_prime);
    LinearOracle oracle = make_greedy_oracle(split);
    MwuConfig mwu_cfg = cfg.mwu;
    mwu_cfg.eps = std::min(cfg.mwu_eps, 1.0 / 16.0);
    out.mwu = mwu_solve(split, mwu_cfg, oracle);

    out.x = out.mwu.x_host;
    if (cfg.rescale) {
        int max_size = static_cast<int>(std::floor(1.0 / mwu_cfg.eps));
        double s = max_rescale_into_polytope(g, out.x, max_size);
        out.rescale_factor = s;
        // upscaling is monotone for the entropy objective as long as every
        // entry stays below the per-edge maximizer z* = 1, which the degree
        // part of the ratio guarantees
        out.x = out.x.scaled(s);
    }
    out.objective = objective(g, out.x, p).total;
    return out;
}

// Rebuild strategy backed by the MWU entropy solver. The framework hands in
// an accuracy target of mu eps^2 / 512; at desk scale the solver runs at the
// configured floor instead and the engine's maintained ratio is covered by
// the value checks in the acceptance suites.
class MwuEntropyStrategy final : public RebuildStrategy {
public:
    explicit MwuEntropyStrategy(double delta_floor = 0.1, EntropySolveConfig cfg = {})
        : delta_floor_(delta_floor), cfg_(cfg) {}

    RebuildSolution solve(const DynamicGraph& g, double mu, double gamma, double delta) override {
        EntropyParams p;
        p.mu = std::min(1.0, mu);
        p.gamma = gamma;
        EntropySolveResult res = solve_entropy_matching(g, p, std::max(delta, delta_floor_), cfg_);
        RebuildSolution sol;
        sol.value = weighted_value(g, res.x);
        sol.objective = res.objective;
        sol.x = std::move(res.x);
        return sol;
    }

    std::string name() const override { return "entropy-mwu"; }

private:
    double delta_floor_;
    EntropySolveConfig cfg_;
};

}  // namespace decmatch
