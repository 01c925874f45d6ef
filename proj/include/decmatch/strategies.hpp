#pragma once

// Rebuild strategies for the lazy engine.
//
// FrankWolfeStrategy maximizes the entropy objective over the matching
// polytope with conditional gradient steps (exact blossom as the linear
// oracle). With the framework's tiny mu the objective is nearly linear and a
// handful of iterations reaches far beyond the accuracy the maintained
// approximation ratio needs.
//
// SinkhornStrategy maximizes the same objective over the degree-constrained
// relaxation P_G via dual coordinate descent. Only valid where P_G is the
// feasible set (bipartite instances, the lower-bound runs); rebuild cost is
// linear in the alive edges, which is what the big adversary grids need.
// Uniform weights get a closed-form dual update; general weights fall back
// to a per-vertex monotone root solve.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "decmatch/lazy.hpp"
#include "decmatch/oracles.hpp"

namespace decmatch {

struct FrankWolfeStrategyConfig {
    int max_iters = 600;
    // gap target = gap_coeff * eps^2 * max(value, 1); far below the slack the
    // maintained (1 - eps) ratio consumes
    double gap_coeff = 0.125;
    double eps = 0.1;
};

class FrankWolfeStrategy final : public RebuildStrategy {
public:
    explicit FrankWolfeStrategy(FrankWolfeStrategyConfig cfg = {}) : cfg_(cfg) {}

    RebuildSolution solve(const DynamicGraph& g, double mu, double gamma, double) override {
        EntropyParams p;
        p.mu = std::min(1.0, mu);
        p.gamma = gamma;
        p.eps = cfg_.eps;
        FrankWolfeResult probe = frank_wolfe_entropy(g, p, 2);
        double scale = std::max(1.0, probe.objective);
        FrankWolfeOptions opts;
        opts.gap_target = cfg_.gap_coeff * cfg_.eps * cfg_.eps * scale;
        FrankWolfeResult fw = frank_wolfe_entropy(g, p, cfg_.max_iters, opts);
        RebuildSolution sol;
        sol.value = weighted_value(g, fw.x);
        sol.objective = fw.objective;
        sol.residual = std::max(fw.gap, 0.0);
        sol.x = std::move(fw.x);
        return sol;
    }

    std::string name() const override { return "entropy-fw"; }

private:
    FrankWolfeStrategyConfig cfg_;
};

struct SinkhornStrategyConfig {
    int max_sweeps = 60;
    double tol = 1e-9;  // max degree violation before the final clip
};

class SinkhornStrategy final : public RebuildStrategy {
public:
    explicit SinkhornStrategy(SinkhornStrategyConfig cfg = {}) : cfg_(cfg) {}

    // All dual work happens in log2 space: lx_e = log2 of the stationarity
    // value of x_e, which is (1 - (y_u + y_v)/w_e)/mu + log2(gamma/w_e)
    // - log2(e). A vertex update solves its degree constraint exactly via
    // log-sum-exp (Gauss-Seidel), which is stable at the tiny mu the
    // framework uses.
    RebuildSolution solve(const DynamicGraph& g, double mu, double gamma, double) override {
        const int n = g.vertex_count();
        const int m = g.edge_count();
        std::vector<double> y(static_cast<size_t>(n), 0.0);
        auto lx = [&](EdgeId e) {
            const Edge& ed = g.edge(e);
            double w = static_cast<double>(ed.w);
            double t = (y[static_cast<size_t>(ed.u)] + y[static_cast<size_t>(ed.v)]) / w;
            return (1.0 - t) / mu + std::log2(gamma / w) - kLog2E;
        };

        for (int sweep = 0; sweep < cfg_.max_sweeps; ++sweep) {
            double worst = 0.0;
            for (VertexId v = 0; v < n; ++v) {
                double before = y[static_cast<size_t>(v)];
                double after = solve_vertex(g, y, v, mu, lx);
                y[static_cast<size_t>(v)] = after;
                worst = std::max(worst, std::abs(after - before) / (mu + std::abs(before)));
            }
            if (worst <= cfg_.tol) break;
        }

        std::vector<double> x(static_cast<size_t>(m), 0.0);
        for (EdgeId e = 0; e < m; ++e)
            if (g.alive(e)) x[static_cast<size_t>(e)] = std::exp2(std::min(lx(e), 0.0));
        return finalize(g, x, mu, gamma);
    }

    std::string name() const override { return "entropy-sinkhorn"; }

private:
    // Exact 1-D dual solve at v: find smallest y_v >= 0 with degree(v) <= 1.
    // In log space the degree is sum_e 2^{A_e - B_e y_v} with B_e =
    // 1/(w_e mu) > 0; Newton on h(y) = log2(degree) from the left converges
    // monotonically since h is convex decreasing. Uniform weights finish in
    // one closed-form step.
    template <typename Lx>
    double solve_vertex(const DynamicGraph& g, std::vector<double>& y, VertexId v, double mu,
                        Lx&& lx) {
        double save = y[static_cast<size_t>(v)];
        y[static_cast<size_t>(v)] = 0.0;
        bool any = false;
        bool uniform = true;
        double wfirst = 0.0;
        for (EdgeId e : g.incident(v)) {
            if (!g.alive(e)) continue;
            any = true;
            double w = static_cast<double>(g.edge(e).w);
            if (wfirst == 0.0)
                wfirst = w;
            else if (w != wfirst)
                uniform = false;
        }
        if (!any) {
            y[static_cast<size_t>(v)] = save;
            return 0.0;
        }

        auto log_degree = [&](double yv) {
            y[static_cast<size_t>(v)] = yv;
            double mx = -std::numeric_limits<double>::infinity();
            for (EdgeId e : g.incident(v))
                if (g.alive(e)) mx = std::max(mx, lx(e));
            double s = 0.0;
            for (EdgeId e : g.incident(v))
                if (g.alive(e)) s += std::exp2(lx(e) - mx);
            return mx + std::log2(s);
        };

        double h0 = log_degree(0.0);
        if (h0 <= 0.0) {
            y[static_cast<size_t>(v)] = save;
            return 0.0;
        }
        if (uniform) {
            y[static_cast<size_t>(v)] = save;
            return wfirst * mu * h0;  // closed form: subtracting yv/(w mu) shifts h by -yv/(w mu)
        }
        // Newton from below on h(yv) = 0
        double yv = 0.0;
        double h = h0;
        for (int it = 0; it < 50 && h > 1e-13; ++it) {
            // derivative: -(sum B_e 2^{A_e - B_e yv}) / (ln 2 ... in log2 units)
            double mx = -std::numeric_limits<double>::infinity();
            y[static_cast<size_t>(v)] = yv;
            for (EdgeId e : g.incident(v))
                if (g.alive(e)) mx = std::max(mx, lx(e));
            double s = 0.0;
            double sb = 0.0;
            for (EdgeId e : g.incident(v)) {
                if (!g.alive(e)) continue;
                double term = std::exp2(lx(e) - mx);
                s += term;
                sb += term / (static_cast<double>(g.edge(e).w) * mu);
            }
            double hprime = -sb / s;  // d/dyv of log2(degree)
            double step = -h / hprime;
            yv += step;
            h = log_degree(yv);
        }
        y[static_cast<size_t>(v)] = save;
        return std::max(0.0, yv);
    }

    RebuildSolution finalize(const DynamicGraph& g, std::vector<double>& x, double mu,
                             double gamma) {
        const int n = g.vertex_count();
        const int m = g.edge_count();
        std::vector<double> deg(static_cast<size_t>(n), 0.0);
        for (EdgeId e = 0; e < m; ++e) {
            if (!g.alive(e)) continue;
            deg[static_cast<size_t>(g.edge(e).u)] += x[static_cast<size_t>(e)];
            deg[static_cast<size_t>(g.edge(e).v)] += x[static_cast<size_t>(e)];
        }
        double maxdeg = 0.0;
        for (double d : deg) maxdeg = std::max(maxdeg, d);
        double scale = maxdeg > 1.0 ? 1.0 / (maxdeg * (1.0 + 1e-12)) : 1.0;
        RebuildSolution sol;
        sol.x = FractionalAssignment(m);
        for (EdgeId e = 0; e < m; ++e)
            if (g.alive(e) && x[static_cast<size_t>(e)] > 0.0)
                sol.x.set(e, x[static_cast<size_t>(e)] * scale);
        sol.value = weighted_value(g, sol.x);
        EntropyParams p;
        p.mu = std::min(1.0, mu);
        p.gamma = gamma;
        sol.objective = objective(g, sol.x, p).total;
        return sol;
    }

    SinkhornStrategyConfig cfg_;
};

}  // namespace decmatch
