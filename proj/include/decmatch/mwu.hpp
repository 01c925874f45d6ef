#pragma once

// Multiplicative-weights optimization over the perturbed matching polytope:
// the width-bounded oracle loop with Lagrangian binary search, a brute-force
// odd-set evaluator, and the exponential score vectors. Works on a
// capacitated split instance whose copies map back to edges of a host graph;
// degree and odd-set constraints are evaluated on aggregated host masses.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "decmatch/entropy.hpp"
#include "decmatch/errors.hpp"
#include "decmatch/graph.hpp"

namespace decmatch {

// Perturbed constraint bounds: b~_v = 1 - 4 eps, b~_B = floor(|B|/2)
// - eps^2 |B|^2 / 4; positive for |B| <= 1/eps.
struct PerturbedBounds {
    double eps = 0.0;

    explicit PerturbedBounds(double e) : eps(e) {
        if (!(e > 0.0 && e < 0.25))
            throw std::invalid_argument("PerturbedBounds: eps in (0, 1/4)");
    }

    double vertex() const { return 1.0 - 4.0 * eps; }
    double odd_set(int size) const {
        double s = static_cast<double>(size);
        return std::floor(s / 2.0) - eps * eps * s * s / 4.0;
    }
};

// Capacitated linear instance over a host graph: copy i of a host edge has
// its own weight and capacity; the feasible set P is {x(v) <= 1, 0 <= x <= c}.
struct SplitGraph {
    const DynamicGraph* host = nullptr;
    std::vector<EdgeId> parent;   // copy -> host edge
    std::vector<double> weight;   // w'
    std::vector<double> cap;      // c'
    // breakpoints r_e^(0..k+1) per host edge (empty for dead edges)
    std::vector<std::vector<double>> breakpoints;

    int copy_count() const { return static_cast<int>(parent.size()); }

    void aggregate(const std::vector<double>& x, std::vector<double>& host_mass,
                   std::vector<double>& degree) const {
        host_mass.assign(static_cast<size_t>(host->edge_count()), 0.0);
        degree.assign(static_cast<size_t>(host->vertex_count()), 0.0);
        for (int c = 0; c < copy_count(); ++c) {
            double xc = x[static_cast<size_t>(c)];
            if (xc == 0.0) continue;
            EdgeId e = parent[static_cast<size_t>(c)];
            host_mass[static_cast<size_t>(e)] += xc;
            degree[static_cast<size_t>(host->edge(e).u)] += xc;
            degree[static_cast<size_t>(host->edge(e).v)] += xc;
        }
    }
};

// One copy per alive edge with unit capacity: the plain matching instance.
inline SplitGraph identity_split(const DynamicGraph& g) {
    SplitGraph s;
    s.host = &g;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!g.alive(e)) continue;
        s.parent.push_back(e);
        s.weight.push_back(static_cast<double>(g.edge(e).w));
        s.cap.push_back(1.0);
    }
    return s;
}

// Piecewise-linear split of the entropy objective: breakpoints r^(0) = z* = 1
// (valid since mu <= 1), r^(i) = r^(i-1)/(1+eps'), k = ceil(log_{1+eps'}
// (n^2/eps')), caps c'_i = r^(i) - r^(i+1) with r^(k+1) = 0, and weights
// w'_i = (f_e(r^(i)) - f_e(r^(i+1))) / c'_i for the per-edge concave
// f_e(x) = w_e x + mu w_e x log2(gamma/(w_e x)).
inline SplitGraph piecewise_linearize(const DynamicGraph& g, const EntropyParams& p,
                                      double eps_prime) {
    if (!(p.gamma > 0.0)) throw std::invalid_argument("piecewise_linearize: gamma > 0");
    if (!(p.mu > 0.0 && p.mu <= 1.0))
        throw std::invalid_argument("piecewise_linearize: mu in (0, 1]");
    if (!(eps_prime > 0.0)) throw std::invalid_argument("piecewise_linearize: eps' > 0");
    int n = std::max(2, g.vertex_count());
    int k = static_cast<int>(std::ceil(
        std::log(static_cast<double>(n) * n / eps_prime) / std::log1p(eps_prime)));
    SplitGraph s;
    s.host = &g;
    s.breakpoints.assign(static_cast<size_t>(g.edge_count()), {});
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!g.alive(e)) continue;
        double we = static_cast<double>(g.edge(e).w);
        std::vector<double> r(static_cast<size_t>(k) + 2);
        r[0] = 1.0;
        for (int i = 1; i <= k; ++i) r[static_cast<size_t>(i)] = r[static_cast<size_t>(i - 1)] / (1.0 + eps_prime);
        r[static_cast<size_t>(k) + 1] = 0.0;
        for (int i = 0; i <= k; ++i) {
            double c = r[static_cast<size_t>(i)] - r[static_cast<size_t>(i + 1)];
            double df = edge_objective_term(we, r[static_cast<size_t>(i)], p) -
                        edge_objective_term(we, r[static_cast<size_t>(i + 1)], p);
            s.parent.push_back(e);
            s.cap.push_back(c);
            s.weight.push_back(df / c);
        }
        s.breakpoints[static_cast<size_t>(e)] = std::move(r);
    }
    return s;
}

// Weight-ordered greedy for the relaxed capacitated b-matching LP
// (x(v) <= b_v, 0 <= x <= c): processes edges by decreasing coefficient and
// assigns min(cap, slack_u, slack_v). Achieves >= 1/2 of the LP optimum;
// doubled it is a (beta = 2, zeta = 1)-oracle for linear objectives.
inline std::vector<double> greedy_relaxed_oracle(const SplitGraph& s,
                                                 const std::vector<double>& coeffs,
                                                 const std::vector<double>& b) {
    const int m = s.copy_count();
    std::vector<int> order;
    order.reserve(static_cast<size_t>(m));
    for (int c = 0; c < m; ++c)
        if (coeffs[static_cast<size_t>(c)] > 0.0) order.push_back(c);
    std::sort(order.begin(), order.end(), [&](int a, int bb) {
        double ca = coeffs[static_cast<size_t>(a)];
        double cb = coeffs[static_cast<size_t>(bb)];
        if (ca != cb) return ca > cb;
        return a < bb;  // deterministic ties
    });
    std::vector<double> slack = b;
    std::vector<double> x(static_cast<size_t>(m), 0.0);
    for (int c : order) {
        EdgeId e = s.parent[static_cast<size_t>(c)];
        VertexId u = s.host->edge(e).u;
        VertexId v = s.host->edge(e).v;
        double amt = std::min({s.cap[static_cast<size_t>(c)], slack[static_cast<size_t>(u)],
                               slack[static_cast<size_t>(v)]});
        if (amt <= 0.0) continue;
        x[static_cast<size_t>(c)] = amt;
        slack[static_cast<size_t>(u)] -= amt;
        slack[static_cast<size_t>(v)] -= amt;
    }
    return x;
}

// The (beta, T, zeta)-oracle contract carried by a callable.
struct OracleSpec {
    double beta = 2.0;
    double zeta = 1.0;
    std::string note = "weight-ordered greedy x2 over the relaxed capacitated LP";
};

using LinearOracle = std::function<std::vector<double>(const std::vector<double>& coeffs)>;

// 2x the greedy: output in beta P with g(x) >= max_P g for linear g.
inline LinearOracle make_greedy_oracle(const SplitGraph& s) {
    return [&s](const std::vector<double>& coeffs) {
        std::vector<double> b(static_cast<size_t>(s.host->vertex_count()), 1.0);
        std::vector<double> x = greedy_relaxed_oracle(s, coeffs, b);
        for (double& v : x) v *= 2.0;
        return x;
    };
}

struct EvaluatorReport {
    double lambda = 0.0;
    double lambda_vertex = 0.0;
    bool feasible = false;  // lambda <= 1 + 8 eps
    std::vector<OddSet> members;       // L_x when lambda > 1 + 8 eps
    std::vector<int> member_indices;   // indices into the evaluator's set table
};

// Brute-force evaluator over all odd sets of size <= 1/eps (full enumeration
// by default: the maximizer of the perturbed ratio is not known to be
// connected). The set table and per-set internal edge lists are built once
// and reused across iterations.
class OddSetEvaluator {
public:
    OddSetEvaluator(const DynamicGraph& g, double eps, const OddSetEnumOptions& opts = {})
        : g_(&g), eps_(eps), pb_(eps) {
        int max_size = std::min(g.vertex_count(),
                                static_cast<int>(std::floor(1.0 / eps)));
        if (max_size >= 3) {
            enumerate_odd_sets(
                g, max_size,
                [&](const std::vector<VertexId>& members) {
                    SetRec rec;
                    rec.members = members;
                    rec.btilde = pb_.odd_set(static_cast<int>(members.size()));
                    std::vector<char> inset(static_cast<size_t>(g.vertex_count()), 0);
                    for (VertexId v : members) inset[static_cast<size_t>(v)] = 1;
                    for (VertexId v : members) {
                        for (EdgeId e : g.incident(v)) {
                            if (!g.alive(e)) continue;
                            const Edge& ed = g.edge(e);
                            VertexId o = ed.u == v ? ed.v : ed.u;
                            if (o > v && inset[static_cast<size_t>(o)])
                                rec.internal.push_back(e);
                        }
                    }
                    if (!rec.internal.empty()) sets_.push_back(std::move(rec));
                },
                opts);
        }
    }

    const PerturbedBounds& bounds() const { return pb_; }
    double eps() const { return eps_; }
    size_t set_count() const { return sets_.size(); }
    const std::vector<VertexId>& set_members(int idx) const {
        return sets_[static_cast<size_t>(idx)].members;
    }
    const std::vector<EdgeId>& set_internal(int idx) const {
        return sets_[static_cast<size_t>(idx)].internal;
    }
    double set_bound(int idx) const { return sets_[static_cast<size_t>(idx)].btilde; }

    double set_lambda(int idx, const std::vector<double>& host_mass) const {
        const SetRec& rec = sets_[static_cast<size_t>(idx)];
        double mass = 0.0;
        for (EdgeId e : rec.internal) mass += host_mass[static_cast<size_t>(e)];
        return mass / rec.btilde;
    }

    // Exact lambda_x and L_x = {B : lambda_B >= lambda_x - eps^3/10} when
    // lambda_x > 1 + 8 eps; otherwise reports feasibility.
    EvaluatorReport evaluate(const std::vector<double>& degree,
                             const std::vector<double>& host_mass) const {
        EvaluatorReport rep;
        double bv = pb_.vertex();
        for (VertexId v = 0; v < g_->vertex_count(); ++v)
            rep.lambda_vertex = std::max(rep.lambda_vertex, degree[static_cast<size_t>(v)] / bv);
        rep.lambda = rep.lambda_vertex;
        std::vector<double> lam(sets_.size());
        for (size_t i = 0; i < sets_.size(); ++i) {
            lam[i] = set_lambda(static_cast<int>(i), host_mass);
            rep.lambda = std::max(rep.lambda, lam[i]);
        }
        rep.feasible = rep.lambda <= 1.0 + 8.0 * eps_;
        if (!rep.feasible) {
            double cut = rep.lambda - eps_ * eps_ * eps_ / 10.0;
            for (size_t i = 0; i < sets_.size(); ++i) {
                if (lam[i] >= cut) {
                    rep.member_indices.push_back(static_cast<int>(i));
                    rep.members.emplace_back(sets_[i].members);
                }
            }
        }
        return rep;
    }

private:
    struct SetRec {
        std::vector<VertexId> members;
        std::vector<EdgeId> internal;
        double btilde = 0.0;
    };
    const DynamicGraph* g_;
    double eps_;
    PerturbedBounds pb_;
    std::vector<SetRec> sets_;
};

struct ScoreVector {
    std::vector<double> pv;              // per vertex
    std::vector<double> pB;              // aligned with report.member_indices
    std::vector<double> l_host;          // per host edge
    double gamma_x = 0.0;
};

// p_v = exp(alpha (lambda_v - lambda_x)) / b~_v for qualifying vertices,
// p_B likewise for B in L_x; gamma_x = sum p_v b~_v + sum p_B b~_B;
// l_e = p_u + p_v + sum_{B in L_x: u,v in B} p_B by direct summation.
inline ScoreVector compute_scores(const OddSetEvaluator& ev, const EvaluatorReport& rep,
                                  const std::vector<double>& degree,
                                  const std::vector<double>& host_mass, double alpha) {
    ScoreVector sc;
    double eps = ev.eps();
    double bv = ev.bounds().vertex();
    double lambda = rep.lambda;
    double cut = lambda - eps * eps * eps / 10.0;
    sc.pv.assign(degree.size(), 0.0);
    for (size_t v = 0; v < degree.size(); ++v) {
        double lv = degree[v] / bv;
        if (lv >= cut) {
            sc.pv[v] = std::exp(alpha * (lv - lambda)) / bv;
            sc.gamma_x += sc.pv[v] * bv;
        }
    }
    sc.pB.assign(rep.member_indices.size(), 0.0);
    for (size_t i = 0; i < rep.member_indices.size(); ++i) {
        int idx = rep.member_indices[i];
        double lB = ev.set_lambda(idx, host_mass);
        double bB = ev.set_bound(idx);
        sc.pB[i] = std::exp(alpha * (lB - lambda)) / bB;
        sc.gamma_x += sc.pB[i] * bB;
    }
    return sc;
}

inline void finish_scores(const DynamicGraph& g, const OddSetEvaluator& ev,
                          const EvaluatorReport& rep, ScoreVector& sc) {
    sc.l_host.assign(static_cast<size_t>(g.edge_count()), 0.0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!g.alive(e)) continue;
        sc.l_host[static_cast<size_t>(e)] = sc.pv[static_cast<size_t>(g.edge(e).u)] +
                                            sc.pv[static_cast<size_t>(g.edge(e).v)];
    }
    for (size_t i = 0; i < rep.member_indices.size(); ++i) {
        if (sc.pB[i] == 0.0) continue;
        for (EdgeId e : ev.set_internal(rep.member_indices[i]))
            sc.l_host[static_cast<size_t>(e)] += sc.pB[i];
    }
}

struct BinSearchResult {
    std::vector<double> x;
    double f_value = 0.0;
    double l_value = 0.0;
    int oracle_calls = 0;
};

// Lagrangian binary search on rho in [0, gamma1/gamma2] over g_rho = f -
// rho l; returns an x in beta P with f(x) >= zeta (1 - eps) gamma1 and
// l(x) <= gamma2, or nullopt when no such point was certified (the caller
// then decrements OPT).
inline std::optional<BinSearchResult> bin_search_lagrange(
    const SplitGraph& s, const std::vector<double>& f_coeffs, const std::vector<double>& l_coeffs,
    double gamma1, double gamma2, double eps, const LinearOracle& oracle, double zeta = 1.0,
    const std::vector<double>* x0_hint = nullptr) {
    if (!(gamma1 > 0.0) || !(gamma2 >= 0.0))
        throw std::invalid_argument("bin_search_lagrange: gamma1 > 0, gamma2 >= 0 required");
    const int m = s.copy_count();
    auto dot = [&](const std::vector<double>& c, const std::vector<double>& x) {
        double acc = 0.0;
        for (int i = 0; i < m; ++i) acc += c[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
        return acc;
    };
    auto run_oracle = [&](double rho) {
        std::vector<double> g(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i)
            g[static_cast<size_t>(i)] =
                f_coeffs[static_cast<size_t>(i)] - rho * l_coeffs[static_cast<size_t>(i)];
        return oracle(g);
    };
    int calls = 0;
    std::vector<double> x0;
    if (x0_hint) {
        x0 = *x0_hint;  // the rho = 0 objective is f itself, valid across calls
    } else {
        x0 = run_oracle(0.0);
        ++calls;
    }
    double f0 = dot(f_coeffs, x0);
    double l0 = dot(l_coeffs, x0);
    auto accept = [&](std::vector<double> x, double fx, double lx) -> std::optional<BinSearchResult> {
        if (fx >= zeta * (1.0 - eps) * gamma1 - 1e-12 && lx <= gamma2 * (1.0 + 1e-12)) {
            BinSearchResult res;
            res.x = std::move(x);
            res.f_value = fx;
            res.l_value = lx;
            res.oracle_calls = calls;
            return res;
        }
        return std::nullopt;
    };
    if (l0 <= gamma2) return accept(std::move(x0), f0, l0);
    if (gamma2 == 0.0) return std::nullopt;

    double rho_minus = 0.0;
    double rho_plus = gamma1 / gamma2;
    std::vector<double> x_minus = std::move(x0);
    std::vector<double> x_plus(static_cast<size_t>(m), 0.0);  // the zero vector is feasible
    while (rho_plus - rho_minus > eps * gamma1 / gamma2) {
        double rho = 0.5 * (rho_minus + rho_plus);
        std::vector<double> xr = run_oracle(rho);
        ++calls;
        if (dot(l_coeffs, xr) > gamma2) {
            rho_minus = rho;
            x_minus = std::move(xr);
        } else {
            rho_plus = rho;
            x_plus = std::move(xr);
        }
    }
    double l_minus = dot(l_coeffs, x_minus);
    double l_plus = dot(l_coeffs, x_plus);
    // convex-combine so that l(x) = gamma2 exactly
    double t = l_minus - l_plus <= 0.0 ? 1.0 : (l_minus - gamma2) / (l_minus - l_plus);
    t = std::clamp(t, 0.0, 1.0);
    std::vector<double> x(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
        x[static_cast<size_t>(i)] = (1.0 - t) * x_minus[static_cast<size_t>(i)] +
                                    t * x_plus[static_cast<size_t>(i)];
    double fx = dot(f_coeffs, x);
    double lx = dot(l_coeffs, x);
    return accept(std::move(x), fx, lx);
}

struct MwuTraceRow {
    int iter = 0;
    double lambda = 0.0;
    double opt = 0.0;
    double gamma_x = 0.0;
    double delta = 0.0;
};

struct MwuConfig {
    double eps = 1.0 / 16.0;
    // alpha <= paper value 50 eps^-3 ln n; the default is the practical
    // envelope c ln(n m / eps) / eps, which converges at desk scale. Set
    // paper_alpha to run the literal constant.
    double alpha = -1.0;
    bool paper_alpha = false;
    double kappa = 2.0;  // kappa_P for degree+capacity polytopes
    double beta = 2.0;   // oracle width
    double zeta = 1.0;   // oracle approximation
    std::int64_t max_iters = -1;  // default scales with alpha lambda0 / eps
    bool reuse_direction = true;
    bool connected_evaluator = false;
    std::int64_t enumeration_cap = 10'000'000;
    std::function<void(const MwuTraceRow&)> trace;
};

struct MwuResult {
    std::vector<double> x_copies;       // final x_f per copy
    FractionalAssignment x_host;        // aggregated onto host edges
    double objective = 0.0;             // f(x_f) = w'^T x_f
    int iterations = 0;
    int oracle_calls = 0;
    double final_lambda = 0.0;
    double opt_estimate = 0.0;
};

// Concave (here: linear) function optimization over the matching polytope.
// Returns x_f = x / (1 + 8 eps), which lies in the perturbed polytope and
// hence in M_G of the host graph.
//
// The iterate is kept implicitly as a convex combination of the oracle
// directions found so far (new directions only appear when no cached one
// satisfies the current score budget), so an iteration touches host-sized
// state only: masses and degrees are recombined from per-direction
// aggregates, and the per-copy vector is materialized once at the end.
inline MwuResult mwu_solve(const SplitGraph& s, const MwuConfig& cfg,
                           const LinearOracle& oracle) {
    const DynamicGraph& g = *s.host;
    const int m = s.copy_count();
    const double eps = cfg.eps;
    if (!(eps > 0.0 && eps <= 1.0 / 16.0 + 1e-12))
        throw std::invalid_argument("mwu_solve: eps in (0, 1/16]");
    const double lambda0 = cfg.kappa * cfg.beta;
    const int n = std::max(2, g.vertex_count());
    double alpha = cfg.alpha;
    if (alpha <= 0.0) {
        alpha = cfg.paper_alpha
                    ? 50.0 * std::pow(eps, -3.0) * std::log(static_cast<double>(n))
                    : 4.0 * std::log(static_cast<double>(n) * (m + 2) / eps) / eps;
    }
    std::int64_t max_iters = cfg.max_iters;
    if (max_iters < 0)
        max_iters = static_cast<std::int64_t>(256.0 * alpha * lambda0 / eps) + 1000;

    OddSetEnumOptions eopts;
    eopts.connected_only = cfg.connected_evaluator;
    eopts.cap = cfg.enumeration_cap;
    OddSetEvaluator evaluator(g, eps, eopts);

    struct Direction {
        std::vector<double> copies;
        std::vector<double> host_mass;
        std::vector<double> degree;
        double f = 0.0;
        double coef = 0.0;  // true coefficient = multiplier * coef
    };
    std::vector<Direction> dirs;
    double multiplier = 1.0;
    auto add_direction = [&](std::vector<double> copies, double f_value, double coef) {
        Direction d;
        d.copies = std::move(copies);
        s.aggregate(d.copies, d.host_mass, d.degree);
        d.f = f_value;
        d.coef = coef / multiplier;
        dirs.push_back(std::move(d));
    };
    // fold all coefficient mass into one synthetic direction, keeping the
    // most recent few as zero-coefficient reuse candidates
    const size_t compact_at = 32;
    const size_t keep_recent = 6;
    auto compact = [&]() {
        Direction folded;
        folded.copies.assign(static_cast<size_t>(m), 0.0);
        double f_acc = 0.0;
        for (const Direction& d : dirs) {
            double c = multiplier * d.coef;
            if (c == 0.0) continue;
            for (int i = 0; i < m; ++i)
                folded.copies[static_cast<size_t>(i)] += c * d.copies[static_cast<size_t>(i)];
            f_acc += c * d.f;
        }
        s.aggregate(folded.copies, folded.host_mass, folded.degree);
        folded.f = f_acc;
        folded.coef = 1.0;
        std::vector<Direction> next;
        next.push_back(std::move(folded));
        size_t start = dirs.size() > keep_recent ? dirs.size() - keep_recent : 0;
        for (size_t j = start; j < dirs.size(); ++j) {
            dirs[j].coef = 0.0;
            next.push_back(std::move(dirs[j]));
        }
        dirs = std::move(next);
        multiplier = 1.0;
    };

    MwuResult res;
    std::vector<double> x0 = oracle(s.weight);
    const std::vector<double> x_f_oracle = x0;  // rho = 0 output, reused by every search
    int oracle_calls = 1;
    double opt = 0.0;
    for (int c = 0; c < m; ++c)
        opt += s.weight[static_cast<size_t>(c)] * x0[static_cast<size_t>(c)];
    add_direction(std::move(x0), opt, 1.0);
    double delta = 1.0 / 8.0;

    std::vector<double> host_mass(static_cast<size_t>(g.edge_count()), 0.0);
    std::vector<double> degree(static_cast<size_t>(n), 0.0);
    std::vector<double> l_copies(static_cast<size_t>(m), 0.0);
    auto recombine = [&]() {
        std::fill(host_mass.begin(), host_mass.end(), 0.0);
        std::fill(degree.begin(), degree.end(), 0.0);
        for (const Direction& d : dirs) {
            double c = multiplier * d.coef;
            if (c == 0.0) continue;
            for (size_t e = 0; e < host_mass.size(); ++e) host_mass[e] += c * d.host_mass[e];
            for (size_t v = 0; v < degree.size(); ++v) degree[v] += c * d.degree[v];
        }
    };

    std::int64_t iter = 0;
    for (;; ++iter) {
        recombine();
        EvaluatorReport rep = evaluator.evaluate(degree, host_mass);
        if (iter == 0 && rep.lambda > lambda0 * (1.0 + 1e-9))
            throw ContractError("mwu_solve: initial width exceeds kappa * beta");
        if (rep.feasible) {
            res.final_lambda = rep.lambda;
            break;
        }
        if (iter >= max_iters)
            throw ConvergenceError(
                "mwu_solve: iteration cap " + std::to_string(max_iters) +
                " exceeded; lambda = " + std::to_string(rep.lambda) +
                ", opt = " + std::to_string(opt));
        while (rep.lambda <= 1.0 + 8.0 * delta) delta = std::max(2.0 * delta / 3.0, eps);

        ScoreVector sc = compute_scores(evaluator, rep, degree, host_mass, alpha);
        finish_scores(g, evaluator, rep, sc);

        if (cfg.trace) {
            MwuTraceRow row;
            row.iter = static_cast<int>(iter);
            row.lambda = rep.lambda;
            row.opt = opt;
            row.gamma_x = sc.gamma_x;
            row.delta = delta;
            cfg.trace(row);
        }

        // pick a direction meeting both conditions, newest first
        int chosen = -1;
        if (cfg.reuse_direction) {
            for (int j = static_cast<int>(dirs.size()) - 1; j >= 0; --j) {
                const Direction& cand = dirs[static_cast<size_t>(j)];
                if (cand.f < cfg.zeta * (1.0 - eps) * opt - 1e-12) continue;
                double l_val = 0.0;
                for (size_t e = 0; e < sc.l_host.size(); ++e)
                    l_val += sc.l_host[e] * cand.host_mass[e];
                if (l_val <= sc.gamma_x) {
                    chosen = j;
                    break;
                }
            }
        }
        if (chosen < 0) {
            for (int c = 0; c < m; ++c)
                l_copies[static_cast<size_t>(c)] =
                    sc.l_host[static_cast<size_t>(s.parent[static_cast<size_t>(c)])];
            for (;;) {
                std::optional<BinSearchResult> found =
                    bin_search_lagrange(s, s.weight, l_copies, opt, sc.gamma_x, eps, oracle,
                                        cfg.zeta, &x_f_oracle);
                if (found) {
                    oracle_calls += found->oracle_calls;
                    if (dirs.size() >= compact_at) compact();
                    add_direction(std::move(found->x), found->f_value, 0.0);
                    chosen = static_cast<int>(dirs.size()) - 1;
                    break;
                }
                oracle_calls += 2;
                opt *= 1.0 - eps;  // OPT was too optimistic
                if (opt < 1e-12)
                    throw ConvergenceError("mwu_solve: OPT collapsed during decrement loop");
            }
        }

        // x <- (1 - sigma) x + sigma x~, tracked through the multiplier
        double sigma = delta / (4.0 * alpha * lambda0);
        multiplier *= 1.0 - sigma;
        dirs[static_cast<size_t>(chosen)].coef += sigma / multiplier;
        if (multiplier < 1e-280) {  // renormalize before underflow
            for (Direction& d : dirs) d.coef *= multiplier;
            multiplier = 1.0;
        }
    }

    res.iterations = static_cast<int>(iter);
    res.oracle_calls = oracle_calls;
    res.opt_estimate = opt;
    res.x_copies.assign(static_cast<size_t>(m), 0.0);
    double scale = 1.0 / (1.0 + 8.0 * eps);
    for (const Direction& d : dirs) {
        double c = multiplier * d.coef * scale;
        if (c == 0.0) continue;
        for (int i = 0; i < m; ++i)
            res.x_copies[static_cast<size_t>(i)] += c * d.copies[static_cast<size_t>(i)];
    }
    res.x_host = FractionalAssignment(g.edge_count());
    double obj = 0.0;
    for (int c = 0; c < m; ++c) {
        double xc = res.x_copies[static_cast<size_t>(c)];
        if (xc == 0.0) continue;
        EdgeId e = s.parent[static_cast<size_t>(c)];
        res.x_host.set(e, res.x_host[e] + xc);
        obj += s.weight[static_cast<size_t>(c)] * xc;
    }
    res.objective = obj;
    return res;
}

// lambda_x of an assignment against the perturbed polytope of g.
inline EvaluatorReport evaluate_violations(const DynamicGraph& g, const FractionalAssignment& x,
                                           double eps, const OddSetEnumOptions& opts = {}) {
    OddSetEvaluator ev(g, eps, opts);
    std::vector<double> host_mass(static_cast<size_t>(g.edge_count()), 0.0);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (g.alive(e)) host_mass[static_cast<size_t>(e)] = x[e];
    std::vector<double> degree = all_degree_masses(g, x);
    return ev.evaluate(degree, host_mass);
}

}  // namespace decmatch
