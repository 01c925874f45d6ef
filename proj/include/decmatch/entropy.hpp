#pragma once

// Entropy regularizer r_{S,gamma}, the regularized objective f^mu_{S,gamma},
// its Bregman divergence, and the analytic bounds of the framework as
// executable checks. Logarithms are base 2 throughout, matching the source
// convention; the one natural-log site in the code base is the sampling
// constant in rounding_rand.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "decmatch/errors.hpp"
#include "decmatch/graph.hpp"

namespace decmatch {

inline constexpr double kLog2E = 1.4426950408889634;  // log2(e) = 1/ln 2

struct EntropyParams {
    double mu = 0.1;    // trade-off, in (0, 1]
    double gamma = 1.0; // scale, > 0
    double eps = 0.1;   // accuracy the surrounding framework runs at

    void validate() const {
        if (!(mu > 0.0 && mu <= 1.0)) throw std::invalid_argument("EntropyParams: mu in (0,1]");
        if (!(gamma > 0.0)) throw std::invalid_argument("EntropyParams: gamma > 0");
        if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("EntropyParams: eps in (0,1)");
    }
};

struct ObjectiveReport {
    double linear = 0.0;  // w_S' x
    double reg = 0.0;     // r_{S,gamma}(x)
    double total = 0.0;   // linear + mu * reg
    double norm_w = 0.0;  // ||x||_{w,S}
};

struct CheckResult {
    bool ok = false;
    double margin = 0.0;  // distance to the violated side; >= 0 when ok
    explicit operator bool() const { return ok; }
};

// Coordinate-level core. S is a list of coordinate indices into w and x.

// r_{S,gamma}(x) = sum_{i in S} w_i x_i log2(gamma / (w_i x_i)); 0 log(.) := 0.
inline double regularizer(const std::vector<double>& w, const std::vector<double>& x,
                          const std::vector<int>& s, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("regularizer: gamma > 0");
    double r = 0.0;
    for (int i : s) {
        double wx = w[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
        if (x[static_cast<size_t>(i)] < 0.0)
            throw std::invalid_argument("regularizer: negative entry");
        if (wx > 0.0) r += wx * std::log2(gamma / wx);
    }
    return r;
}

inline ObjectiveReport objective(const std::vector<double>& w, const std::vector<double>& x,
                                 const std::vector<int>& s, const EntropyParams& p) {
    p.validate();
    ObjectiveReport rep;
    for (int i : s) {
        rep.linear += w[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
        rep.norm_w += w[static_cast<size_t>(i)] * std::abs(x[static_cast<size_t>(i)]);
    }
    rep.reg = regularizer(w, x, s, p.gamma);
    rep.total = rep.linear + p.mu * rep.reg;
    return rep;
}

// V_y(x) = sum w_i x_i log2(y_i/x_i) + sum w_i (x_i - y_i); requires y > 0 on S.
// This is the literal textbook form of the divergence with unit linear
// coefficient; it is the exact Bregman divergence of r under natural log.
inline double bregman(const std::vector<double>& w, const std::vector<double>& x,
                      const std::vector<double>& y, const std::vector<int>& s) {
    double v = 0.0;
    for (int i : s) {
        double yi = y[static_cast<size_t>(i)];
        double xi = x[static_cast<size_t>(i)];
        if (!(yi > 0.0)) throw std::domain_error("bregman: y must be positive on S");
        if (xi < 0.0) throw std::invalid_argument("bregman: negative x entry");
        if (xi > 0.0) v += w[static_cast<size_t>(i)] * xi * std::log2(yi / xi);
        v += w[static_cast<size_t>(i)] * (xi - yi);
    }
    return v;
}

// Exact Bregman divergence of the base-2 regularizer r_{S,gamma}: the linear
// term carries log2(e) because d/dt [t log2(1/t)] = log2(1/t) - log2(e).
// Non-positive for every pair (concavity); zero iff x = y on S. The
// inequality checks below use this form.
inline double bregman_consistent(const std::vector<double>& w, const std::vector<double>& x,
                                 const std::vector<double>& y, const std::vector<int>& s) {
    double v = 0.0;
    for (int i : s) {
        double yi = y[static_cast<size_t>(i)];
        double xi = x[static_cast<size_t>(i)];
        if (!(yi > 0.0)) throw std::domain_error("bregman: y must be positive on S");
        if (xi < 0.0) throw std::invalid_argument("bregman: negative x entry");
        if (xi > 0.0) v += w[static_cast<size_t>(i)] * xi * std::log2(yi / xi);
        v += kLog2E * w[static_cast<size_t>(i)] * (xi - yi);
    }
    return v;
}

// nu log2(gamma/nu) <= r_{S,gamma}(x) <= nu log2(d gamma/nu) for nu = w_S'x.
inline CheckResult check_entropy_bounds(const std::vector<double>& w,
                                        const std::vector<double>& x, const std::vector<int>& s,
                                        double gamma, int d, double tol = 1e-7) {
    double nu = 0.0;
    for (int i : s) nu += w[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
    if (!(nu > 0.0)) throw ContractError("check_entropy_bounds: requires w_S'x > 0");
    double r = regularizer(w, x, s, gamma);
    double lo = nu * std::log2(gamma / nu);
    double hi = nu * std::log2(static_cast<double>(d) * gamma / nu);
    double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    double margin = std::min(r - lo, hi - r) / scale;
    return {margin >= -tol, margin};
}

// f(x) <= f(x*) + mu V_{x*}(x); tolerance scaled by the caller-known residual
// of the (possibly approximate) maximizer x*. Uses the consistent divergence;
// the literal unit-coefficient form fails this inequality already in 1-D.
inline CheckResult check_bregman_gap(const std::vector<double>& w, const std::vector<double>& x_star,
                                     const std::vector<double>& x, const std::vector<int>& s,
                                     const EntropyParams& p, double oracle_residual = 0.0,
                                     double tol = 1e-7) {
    double f_star = objective(w, x_star, s, p).total;
    double f_x = objective(w, x, s, p).total;
    double v = bregman_consistent(w, x, x_star, s);
    double scale = std::max({1.0, std::abs(f_star), std::abs(f_x)});
    double margin = (f_star + p.mu * v - f_x) / scale + oracle_residual / scale;
    return {margin >= -tol, margin};
}

// Quadratic gap, f(x) <= f(x*) - mu/(2 nu*) ||x - x*||_{w,S}^2.
inline CheckResult check_quadratic_gap(const std::vector<double>& w,
                                       const std::vector<double>& x_star,
                                       const std::vector<double>& x, const std::vector<int>& s,
                                       const EntropyParams& p, double nu_star,
                                       double oracle_residual = 0.0, double tol = 1e-7) {
    if (!(nu_star > 0.0)) throw ContractError("check_quadratic_gap: nu* > 0 required");
    double f_star = objective(w, x_star, s, p).total;
    double f_x = objective(w, x, s, p).total;
    double dist = 0.0;
    for (int i : s)
        dist += w[static_cast<size_t>(i)] *
                std::abs(x[static_cast<size_t>(i)] - x_star[static_cast<size_t>(i)]);
    double rhs = f_star - p.mu / (2.0 * nu_star) * dist * dist;
    double scale = std::max({1.0, std::abs(f_star)});
    double margin = (rhs - f_x) / scale + oracle_residual / scale;
    return {margin >= -tol, margin};
}

// Both absolute value bounds of a valid iterate: 0 <= mu r(x) <= (eps/2) nu*
// for the tested x, and w'x* >= (1 - eps/2) nu*. Requires the valid-iterate
// condition nu* <= gamma <= d nu* and mu <= eps / (8 log2 d).
inline CheckResult check_value_bound(const std::vector<double>& w,
                                     const std::vector<double>& x_star,
                                     const std::vector<double>& x_tested,
                                     const std::vector<int>& s, const EntropyParams& p,
                                     double nu_star, int d, double oracle_residual = 0.0,
                                     double tol = 1e-7) {
    if (!(nu_star > 0.0)) throw ContractError("check_value_bound: nu* > 0");
    if (!(p.gamma >= nu_star * (1.0 - 1e-12) &&
          p.gamma <= static_cast<double>(d) * nu_star * (1.0 + 1e-12)))
        throw ContractError("check_value_bound: (eps,S,gamma) is not a valid iterate");
    if (d >= 2 && p.mu > p.eps / (8.0 * std::log2(static_cast<double>(d))) * (1.0 + 1e-12))
        throw ContractError("check_value_bound: mu exceeds eps/(8 log d)");
    double mu_r = p.mu * regularizer(w, x_tested, s, p.gamma);
    double lin_star = 0.0;
    for (int i : s) lin_star += w[static_cast<size_t>(i)] * x_star[static_cast<size_t>(i)];
    double m1 = std::min(mu_r, p.eps / 2.0 * nu_star - mu_r) / std::max(1.0, nu_star);
    double m2 = (lin_star - (1.0 - p.eps / 2.0) * nu_star + oracle_residual) /
                std::max(1.0, nu_star);
    double margin = std::min(m1, m2);
    return {margin >= -tol, margin};
}

// Z_{S',gamma} <= (1 - mu eps / 3) Z_{S,gamma} after a value-dropping deletion.
inline CheckResult check_potential_drop(double z_before, double z_after, double mu, double eps,
                                        double oracle_residual = 0.0, double tol = 1e-7) {
    double bound = (1.0 - mu * eps / 3.0) * z_before;
    double scale = std::max(1.0, std::abs(z_before));
    double margin = (bound - z_after + oracle_residual) / scale;
    return {margin >= -tol, margin};
}

// Graph-level wrappers: coordinates are edge ids, S is the alive edge set.

inline std::vector<int> alive_coordinates(const DynamicGraph& g) {
    std::vector<int> s;
    s.reserve(static_cast<size_t>(g.alive_count()));
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (g.alive(e)) s.push_back(e);
    return s;
}

inline std::vector<double> edge_weights(const DynamicGraph& g) {
    std::vector<double> w(static_cast<size_t>(g.edge_count()));
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        w[static_cast<size_t>(e)] = static_cast<double>(g.edge(e).w);
    return w;
}

inline ObjectiveReport objective(const DynamicGraph& g, const FractionalAssignment& x,
                                 const EntropyParams& p) {
    return objective(edge_weights(g), x.raw(), alive_coordinates(g), p);
}

// Entropy objective of a single edge value under edge weight we; the
// coordinate-separable f_e used by the piecewise-linear reduction.
inline double edge_objective_term(double we, double xe, const EntropyParams& p) {
    if (xe <= 0.0) return 0.0;
    return we * xe + p.mu * we * xe * std::log2(p.gamma / (we * xe));
}

// d f_e / d x_e; log2-based, hence the log2(e) correction.
inline double edge_objective_gradient(double we, double xe, const EntropyParams& p,
                                      double floor_x = 1e-15) {
    double xv = std::max(xe, floor_x);
    return we * (1.0 + p.mu * (std::log2(p.gamma / (we * xv)) - kLog2E));
}

}  // namespace decmatch
