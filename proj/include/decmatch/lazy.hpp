#pragma once

// The lazy update scheme: keep the solution until deletions push its value
// below (1 - eps/2) of the rebuild value, then recompute via a pluggable
// approximate entropy-regularized maximizer. Rebuilds run the phase-based
// estimate descent: while the new solution's value is below nu~/d, divide
// nu~ by (1-eps) d and re-solve with gamma = nu~.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "decmatch/entropy.hpp"
#include "decmatch/errors.hpp"
#include "decmatch/graph.hpp"

namespace decmatch {

struct RebuildSolution {
    FractionalAssignment x;
    double value = 0.0;      // w_S' x
    double objective = 0.0;  // f^mu_{S,gamma}(x)
    double residual = 0.0;   // upper bound on Z - f(x) if the strategy knows one
};

// Contract: output lies in the feasible set of the alive subgraph and
// f^mu_{S,gamma}(output) >= (1 - delta) max. `delta` is the accuracy the
// framework asks for; strategies that cannot reach it at desk scale document
// the accuracy they do provide.
class RebuildStrategy {
public:
    virtual ~RebuildStrategy() = default;
    virtual RebuildSolution solve(const DynamicGraph& g, double mu, double gamma,
                                  double delta) = 0;
    virtual std::string name() const = 0;
};

struct RebuildEvent {
    int t = 0;
    double nu = 0.0;
    double nu_tilde = 0.0;
    int alive = 0;
    double wall_ms = 0.0;
    int descents = 0;
};

using RebuildSink = std::function<void(const RebuildEvent&)>;

struct DeleteOutcome {
    bool rebuilt = false;
};

struct LazyOptions {
    double eps = 0.1;
    double alpha0 = -1.0;  // upper bound on the optimum; default n * W
    double mu = -1.0;      // default eps / (128 log2 d)
    double rel_tol = 1e-9;
    int max_descents = 200;
    bool verify_membership = false;  // debug-level polytope check per rebuild
};

// Theoretical cap on rebuild calls while the optimum drops by a factor k,
// with the explicit constant of the approximate-solution analysis:
// ceil(log((1 + eps/8) k) / log(1 / (1 - mu eps / 12))). A conservative
// upper envelope, not a tight prediction.
inline std::int64_t rebuild_count_bound(std::int64_t d, double k, double mu, double eps) {
    if (d < 1 || !(k > 0.0) || !(mu > 0.0) || !(eps > 0.0))
        throw std::invalid_argument("rebuild_count_bound: positive parameters required");
    double drop = mu * eps / 12.0;
    if (drop >= 1.0) return 1;
    double numer = std::log((1.0 + eps / 8.0) * k);
    if (numer <= 0.0) return 0;
    double denom = -std::log(1.0 - drop);
    double bound = std::ceil(numer / denom);
    if (bound > 9.0e18) return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(bound);
}

class LazyEngine {
public:
    LazyEngine(DynamicGraph graph, std::shared_ptr<RebuildStrategy> strategy, LazyOptions opts,
               RebuildSink sink = nullptr)
        : g_(std::move(graph)), strategy_(std::move(strategy)), opts_(opts), sink_(std::move(sink)) {
        if (!(opts_.eps > 0.0 && opts_.eps < 1.0))
            throw std::invalid_argument("LazyEngine: eps in (0,1)");
        if (!strategy_) throw std::invalid_argument("LazyEngine: strategy required");
        d_ = std::max(2, g_.edge_count());
        if (opts_.mu <= 0.0)
            opts_.mu = opts_.eps / (128.0 * std::log2(static_cast<double>(d_)));
        if (opts_.alpha0 <= 0.0)
            opts_.alpha0 = static_cast<double>(g_.vertex_count()) *
                           static_cast<double>(std::max<Weight>(g_.max_weight(), 1));
        nu_tilde_ = opts_.alpha0;
        x_ = FractionalAssignment(g_.edge_count());
        rebuild();
    }

    const DynamicGraph& graph() const { return g_; }
    const FractionalAssignment& x() const { return x_; }
    double value() const { return value_; }
    double nu() const { return nu_; }
    double nu_tilde() const { return nu_tilde_; }
    double mu() const { return opts_.mu; }
    double eps() const { return opts_.eps; }
    int rebuild_count() const { return t_; }
    int descent_count() const { return descents_total_; }
    std::int64_t recourse() const { return recourse_; }

    DeleteOutcome del(EdgeId e) {
        if (!g_.alive(e)) throw std::invalid_argument("lazy delete: coordinate already dead");
        g_.delete_edge(e);
        double xe = x_[e];
        if (xe != 0.0) {
            value_ -= static_cast<double>(g_.edge(e).w) * xe;
            x_.zero(e);
            ++recourse_;
        }
        if (++deletes_since_resync_ >= 4096) resync_value();
        DeleteOutcome out;
        if (value_ < (1.0 - opts_.eps / 2.0) * nu_) {
            resync_value();
            if (value_ < (1.0 - opts_.eps / 2.0) * nu_) {
                rebuild();
                out.rebuilt = true;
            }
        }
        return out;
    }

    void rebuild() {
        auto start = std::chrono::steady_clock::now();
        int descents = 0;
        FractionalAssignment old_x = x_;
        if (g_.alive_count() == 0) {
            x_ = FractionalAssignment(g_.edge_count());
            value_ = 0.0;
        } else {
            double delta = opts_.mu * opts_.eps * opts_.eps / 512.0;
            RebuildSolution sol = strategy_->solve(g_, opts_.mu, nu_tilde_, delta);
            while (sol.value < nu_tilde_ / static_cast<double>(d_) * (1.0 - opts_.rel_tol)) {
                nu_tilde_ = nu_tilde_ / ((1.0 - opts_.eps) * static_cast<double>(d_));
                if (++descents > opts_.max_descents)
                    throw ConvergenceError("lazy rebuild: estimate descent did not terminate");
                sol = strategy_->solve(g_, opts_.mu, nu_tilde_, delta);
            }
            x_ = std::move(sol.x);
            value_ = sol.value;
            if (opts_.verify_membership) {
                ViolationReport rep = check_membership(g_, x_, std::max(opts_.eps, 0.05));
                if (!rep.empty())
                    throw ContractError("rebuild strategy returned an infeasible solution");
            }
        }
        for (EdgeId e = 0; e < g_.edge_count(); ++e)
            if (old_x[e] != x_[e]) ++recourse_;
        nu_ = value_;
        descents_total_ += descents;
        ++t_;
        deletes_since_resync_ = 0;
        if (sink_) {
            RebuildEvent ev;
            ev.t = t_;
            ev.nu = nu_;
            ev.nu_tilde = nu_tilde_;
            ev.alive = g_.alive_count();
            ev.descents = descents;
            ev.wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
            sink_(ev);
        }
    }

private:
    void resync_value() {
        value_ = weighted_value(g_, x_);
        deletes_since_resync_ = 0;
    }

    DynamicGraph g_;
    std::shared_ptr<RebuildStrategy> strategy_;
    LazyOptions opts_;
    RebuildSink sink_;
    FractionalAssignment x_;
    double value_ = 0.0;
    double nu_ = 0.0;
    double nu_tilde_ = 0.0;
    int d_ = 2;
    int t_ = 0;
    int descents_total_ = 0;
    std::int64_t recourse_ = 0;
    int deletes_since_resync_ = 0;
};

}  // namespace decmatch
