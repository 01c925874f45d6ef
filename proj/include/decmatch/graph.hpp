#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "decmatch/errors.hpp"

namespace decmatch {

using VertexId = int;
using EdgeId = int;
using Weight = long long;

// Absolute slack absorbing float rounding in all polytope membership checks.
inline constexpr double kMembershipSlack = 1e-9;

struct Edge {
    VertexId u = 0;
    VertexId v = 0;
    Weight w = 1;
};

// Undirected weighted simple graph under soft edge deletions. Edge ids are
// positions in the construction order and stay stable for the whole run;
// deletions only flip the alive flag.
class DynamicGraph {
public:
    DynamicGraph() = default;

    DynamicGraph(int n, const std::vector<Edge>& edges) : n_(n) {
        edges_.reserve(edges.size());
        for (const Edge& e : edges) add_edge_checked(e);
        build_adjacency();
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const Edge& edge(EdgeId e) const { return edges_[static_cast<size_t>(e)]; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool alive(EdgeId e) const { return alive_[static_cast<size_t>(e)] != 0; }
    int alive_count() const { return alive_count_; }

    Weight max_weight() const { return max_weight_; }

    void delete_edge(EdgeId e) {
        check_edge_id(e);
        if (!alive_[static_cast<size_t>(e)])
            throw std::invalid_argument("delete_edge: edge " + std::to_string(e) + " already deleted");
        alive_[static_cast<size_t>(e)] = 0;
        --alive_count_;
    }

    // Incident edge ids (dead ones included; callers filter by alive()).
    const std::vector<EdgeId>& incident(VertexId v) const {
        check_vertex_id(v);
        return adj_[static_cast<size_t>(v)];
    }

    int alive_degree(VertexId v) const {
        int d = 0;
        for (EdgeId e : incident(v)) d += alive(e) ? 1 : 0;
        return d;
    }

    void check_vertex_id(VertexId v) const {
        if (v < 0 || v >= n_)
            throw std::invalid_argument("vertex id " + std::to_string(v) + " out of range [0," +
                                        std::to_string(n_) + ")");
    }
    void check_edge_id(EdgeId e) const {
        if (e < 0 || e >= edge_count())
            throw std::invalid_argument("edge id " + std::to_string(e) + " out of range");
    }

private:
    void add_edge_checked(const Edge& e) {
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
            throw std::invalid_argument("edge endpoint out of range");
        if (e.u == e.v) throw std::invalid_argument("self-loops are not allowed");
        if (e.w < 1) throw std::invalid_argument("edge weights must be >= 1");
        edges_.push_back(e);
        alive_.push_back(1);
        ++alive_count_;
        max_weight_ = std::max(max_weight_, e.w);
    }

    void build_adjacency() {
        adj_.assign(static_cast<size_t>(n_), {});
        for (EdgeId e = 0; e < edge_count(); ++e) {
            const Edge& ed = edges_[static_cast<size_t>(e)];
            adj_[static_cast<size_t>(ed.u)].push_back(e);
            adj_[static_cast<size_t>(ed.v)].push_back(e);
        }
        // duplicate unordered pairs are rejected (simple graph)
        std::vector<std::pair<VertexId, VertexId>> pairs;
        pairs.reserve(edges_.size());
        for (const Edge& ed : edges_)
            pairs.emplace_back(std::min(ed.u, ed.v), std::max(ed.u, ed.v));
        std::sort(pairs.begin(), pairs.end());
        if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end())
            throw std::invalid_argument("duplicate edge");
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<char> alive_;
    std::vector<std::vector<EdgeId>> adj_;
    int alive_count_ = 0;
    Weight max_weight_ = 0;
};

// Sparse nonnegative edge-indexed vector; fractional matching candidate.
// Stored densely over the stable edge-id space.
class FractionalAssignment {
public:
    FractionalAssignment() = default;
    explicit FractionalAssignment(int edge_count)
        : values_(static_cast<size_t>(edge_count), 0.0) {}

    int size() const { return static_cast<int>(values_.size()); }

    double operator[](EdgeId e) const { return values_[static_cast<size_t>(e)]; }

    void set(EdgeId e, double x) {
        if (x < 0.0) throw std::invalid_argument("fractional assignment entries must be >= 0");
        values_[static_cast<size_t>(e)] = x;
    }
    void zero(EdgeId e) { values_[static_cast<size_t>(e)] = 0.0; }

    template <typename Fn>
    void for_each_nonzero(Fn&& fn) const {
        for (EdgeId e = 0; e < size(); ++e)
            if (values_[static_cast<size_t>(e)] != 0.0) fn(e, values_[static_cast<size_t>(e)]);
    }

    std::vector<EdgeId> support() const {
        std::vector<EdgeId> s;
        for_each_nonzero([&](EdgeId e, double) { s.push_back(e); });
        return s;
    }

    double l1() const {
        double s = 0.0;
        for (double v : values_) s += v;
        return s;
    }

    FractionalAssignment scaled(double factor) const {
        FractionalAssignment out(*this);
        for (double& v : out.values_) v *= factor;
        return out;
    }

    const std::vector<double>& raw() const { return values_; }

private:
    std::vector<double> values_;
};

inline double weighted_value(const DynamicGraph& g, const FractionalAssignment& x) {
    double s = 0.0;
    x.for_each_nonzero([&](EdgeId e, double xe) {
        if (g.alive(e)) s += static_cast<double>(g.edge(e).w) * xe;
    });
    return s;
}

// Odd-cardinality vertex subset, |B| >= 3, members sorted and distinct.
struct OddSet {
    std::vector<VertexId> members;

    OddSet() = default;
    explicit OddSet(std::vector<VertexId> m) : members(std::move(m)) {
        std::sort(members.begin(), members.end());
        if (members.size() < 3 || members.size() % 2 == 0)
            throw std::invalid_argument("odd set must have odd cardinality >= 3");
        if (std::adjacent_find(members.begin(), members.end()) != members.end())
            throw std::invalid_argument("odd set members must be distinct");
    }

    int size() const { return static_cast<int>(members.size()); }
    long long capacity() const { return static_cast<long long>(members.size()) / 2; }

    bool contains(VertexId v) const {
        return std::binary_search(members.begin(), members.end(), v);
    }
};

// x(v): sum of x over alive edges incident to v.
inline double degree_mass(const DynamicGraph& g, const FractionalAssignment& x, VertexId v) {
    g.check_vertex_id(v);
    double s = 0.0;
    for (EdgeId e : g.incident(v))
        if (g.alive(e)) s += x[e];
    return s;
}

inline std::vector<double> all_degree_masses(const DynamicGraph& g,
                                             const FractionalAssignment& x) {
    std::vector<double> deg(static_cast<size_t>(g.vertex_count()), 0.0);
    x.for_each_nonzero([&](EdgeId e, double xe) {
        if (!g.alive(e)) return;
        deg[static_cast<size_t>(g.edge(e).u)] += xe;
        deg[static_cast<size_t>(g.edge(e).v)] += xe;
    });
    return deg;
}

// x(B): sum of x over alive edges with both endpoints in B.
inline double odd_set_mass(const DynamicGraph& g, const FractionalAssignment& x,
                           const OddSet& b) {
    for (VertexId v : b.members) g.check_vertex_id(v);
    double s = 0.0;
    for (VertexId v : b.members) {
        for (EdgeId e : g.incident(v)) {
            if (!g.alive(e)) continue;
            const Edge& ed = g.edge(e);
            VertexId other = ed.u == v ? ed.v : ed.u;
            if (other > v && b.contains(other)) s += x[e];
        }
    }
    return s;
}

struct OddSetEnumOptions {
    bool connected_only = false;
    // Exceeding the cap is an explicit error, not silent truncation.
    std::int64_t cap = 10'000'000;
};

namespace detail {

template <typename Fn>
inline void enumerate_combinations(int n, int k, std::vector<VertexId>& cur, int first,
                                   std::int64_t& budget, Fn&& fn) {
    if (static_cast<int>(cur.size()) == k) {
        if (--budget < 0) throw ResourceError("odd-set enumeration cap exceeded");
        fn(cur);
        return;
    }
    int need = k - static_cast<int>(cur.size());
    for (int v = first; v + need <= n; ++v) {
        cur.push_back(v);
        enumerate_combinations(n, k, cur, v + 1, budget, fn);
        cur.pop_back();
    }
}

// Connected induced subgraph enumeration over the alive graph, one canonical
// visit per set (fixed minimum vertex, frontier extension).
template <typename Fn>
inline void extend_connected(const DynamicGraph& g, VertexId vmin, std::vector<VertexId>& cur,
                             std::vector<VertexId> frontier, std::vector<char>& banned,
                             int max_size, std::int64_t& budget, Fn&& fn) {
    int sz = static_cast<int>(cur.size());
    if (sz >= 3 && sz % 2 == 1) {
        if (--budget < 0) throw ResourceError("odd-set enumeration cap exceeded");
        fn(cur);
    }
    if (sz == max_size) return;
    std::vector<VertexId> banned_here;
    while (!frontier.empty()) {
        VertexId u = frontier.back();
        frontier.pop_back();
        std::vector<VertexId> next = frontier;
        cur.push_back(u);
        banned[static_cast<size_t>(u)] = 1;
        banned_here.push_back(u);
        for (EdgeId e : g.incident(u)) {
            if (!g.alive(e)) continue;
            const Edge& ed = g.edge(e);
            VertexId w = ed.u == u ? ed.v : ed.u;
            if (w <= vmin || banned[static_cast<size_t>(w)]) continue;
            if (std::find(cur.begin(), cur.end(), w) != cur.end()) continue;
            if (std::find(next.begin(), next.end(), w) == next.end()) next.push_back(w);
        }
        extend_connected(g, vmin, cur, std::move(next), banned, max_size, budget, fn);
        cur.pop_back();
        // u stays banned for the remaining branches at this level
    }
    for (VertexId u : banned_here) banned[static_cast<size_t>(u)] = 0;
}

}  // namespace detail

// Visits every odd-cardinality vertex subset of size in [3, max_size]. In
// connected-only mode, only subsets inducing a connected alive subgraph are
// visited; that is valid for membership checks whenever all degree
// constraints hold (a violated odd set then has a violated connected
// component).
template <typename Fn>
inline void enumerate_odd_sets(const DynamicGraph& g, int max_size, Fn&& fn,
                               const OddSetEnumOptions& opts = {}) {
    if (max_size < 3) throw std::invalid_argument("enumerate_odd_sets: max_size must be >= 3");
    int n = g.vertex_count();
    int cap_size = std::min(max_size, n);
    std::int64_t budget = opts.cap;
    std::vector<VertexId> cur;
    if (!opts.connected_only) {
        for (int k = 3; k <= cap_size; k += 2)
            detail::enumerate_combinations(n, k, cur, 0, budget, fn);
    } else {
        std::vector<char> banned(static_cast<size_t>(n), 0);
        for (VertexId v = 0; v < n; ++v) {
            if (g.alive_degree(v) == 0) continue;
            cur.assign(1, v);
            std::vector<VertexId> frontier;
            for (EdgeId e : g.incident(v)) {
                if (!g.alive(e)) continue;
                const Edge& ed = g.edge(e);
                VertexId w = ed.u == v ? ed.v : ed.u;
                if (w > v && std::find(frontier.begin(), frontier.end(), w) == frontier.end())
                    frontier.push_back(w);
            }
            detail::extend_connected(g, v, cur, std::move(frontier), banned, cap_size, budget, fn);
        }
    }
}

struct DegreeViolation {
    VertexId v;
    double mass;  // > 1
};

struct OddSetViolation {
    OddSet set;
    double mass;
    double bound;  // floor(|B|/2)
};

struct ViolationReport {
    std::vector<DegreeViolation> degree;
    std::vector<OddSetViolation> odd_sets;
    bool empty() const { return degree.empty() && odd_sets.empty(); }
};

struct MembershipOptions {
    bool connected_only = true;  // default for membership checks
    std::int64_t enumeration_cap = 10'000'000;
    double slack = kMembershipSlack;
};

// Lists all violated degree constraints and all violated odd-set constraints
// over odd sets of size <= 1/eps. Empty report iff x is in M_{G,eps}.
inline ViolationReport check_membership(const DynamicGraph& g, const FractionalAssignment& x,
                                        double eps, const MembershipOptions& opts = {}) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("check_membership: eps in (0,1)");
    ViolationReport report;
    std::vector<double> deg = all_degree_masses(g, x);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (deg[static_cast<size_t>(v)] > 1.0 + opts.slack)
            report.degree.push_back({v, deg[static_cast<size_t>(v)]});
    int max_size = static_cast<int>(std::floor(1.0 / eps));
    if (max_size < 3) return report;
    OddSetEnumOptions eopts;
    // Connected-only enumeration is only exhaustive when degrees are fine.
    eopts.connected_only = opts.connected_only && report.degree.empty();
    eopts.cap = opts.enumeration_cap;
    enumerate_odd_sets(
        g, max_size,
        [&](const std::vector<VertexId>& members) {
            OddSet b(members);
            double mass = odd_set_mass(g, x, b);
            double bound = static_cast<double>(b.capacity());
            if (mass > bound + opts.slack) report.odd_sets.push_back({b, mass, bound});
        },
        eopts);
    return report;
}

// Largest constraint ratio of x against the true matching polytope bounds,
// over degrees and odd sets of size <= max_size. Returns 0 for x = 0.
inline double membership_ratio(const DynamicGraph& g, const FractionalAssignment& x,
                               int max_size, const OddSetEnumOptions& opts = {}) {
    double lambda = 0.0;
    for (double d : all_degree_masses(g, x)) lambda = std::max(lambda, d);
    if (max_size >= 3) {
        enumerate_odd_sets(
            g, max_size,
            [&](const std::vector<VertexId>& members) {
                OddSet b(members);
                double mass = odd_set_mass(g, x, b);
                lambda = std::max(lambda, mass / static_cast<double>(b.capacity()));
            },
            opts);
    }
    return lambda;
}

// x / (1 + 3 eps); requires x in M_{G,eps}.
inline FractionalAssignment scale_into_polytope(const DynamicGraph& g,
                                                const FractionalAssignment& x, double eps,
                                                const MembershipOptions& opts = {}) {
    if (!check_membership(g, x, eps, opts).empty())
        throw ContractError("scale_into_polytope: x not in M_{G,eps}");
    return x.scaled(1.0 / (1.0 + 3.0 * eps));
}

}  // namespace decmatch
