#include <catch2/catch_amalgamated.hpp>

#include "decmatch/entropy_solver.hpp"
#include "decmatch/mwu.hpp"
#include "decmatch/oracles.hpp"
#include "decmatch/rng.hpp"

using namespace decmatch;

namespace {

DynamicGraph random_graph(Rng& rng, int n, double p, long long wmax) {
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform() < p) es.push_back({u, v, rng.uniform_int(1, wmax)});
    return DynamicGraph(n, es);
}

FractionalAssignment random_polytope_point(Rng& rng, const DynamicGraph& g, int k = 6) {
    FractionalAssignment x(g.edge_count());
    std::vector<double> coef;
    double tot = 0.0;
    for (int i = 0; i < k; ++i) {
        coef.push_back(rng.uniform());
        tot += coef.back();
    }
    for (int i = 0; i < k; ++i) {
        std::vector<double> wts(static_cast<size_t>(g.edge_count()));
        for (EdgeId e = 0; e < g.edge_count(); ++e) wts[static_cast<size_t>(e)] = rng.uniform();
        MatchingResult m = exact_mwm(g, wts);
        for (EdgeId e : m.edges) x.set(e, x[e] + coef[static_cast<size_t>(i)] / tot);
    }
    return x;
}

// LP optimum of max c'x s.t. degree <= b, 0 <= x <= cap over a split instance
double relaxed_lp_opt(const SplitGraph& s, const std::vector<double>& coeffs,
                      const std::vector<double>& b) {
    const int m = s.copy_count();
    const int n = s.host->vertex_count();
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> rhs;
    for (VertexId v = 0; v < n; ++v) {
        std::vector<Rational> row(static_cast<size_t>(m), Rational(0));
        bool any = false;
        for (int c = 0; c < m; ++c) {
            const Edge& ed = s.host->edge(s.parent[static_cast<size_t>(c)]);
            if (ed.u == v || ed.v == v) {
                row[static_cast<size_t>(c)] = Rational(1);
                any = true;
            }
        }
        if (any) {
            a.push_back(std::move(row));
            rhs.push_back(rational_from_double(b[static_cast<size_t>(v)]));
        }
    }
    for (int c = 0; c < m; ++c) {
        std::vector<Rational> row(static_cast<size_t>(m), Rational(0));
        row[static_cast<size_t>(c)] = Rational(1);
        a.push_back(std::move(row));
        rhs.push_back(rational_from_double(s.cap[static_cast<size_t>(c)]));
    }
    std::vector<Rational> obj;
    for (int c = 0; c < m; ++c) obj.push_back(rational_from_double(coeffs[static_cast<size_t>(c)]));
    LpResult lp = solve_lp_max(a, rhs, obj);
    REQUIRE(lp.bounded);
    return rational_to_double(lp.value);
}

}  // namespace

TEST_CASE("piecewise_linearize breakpoints, caps, and ordering") {
    DynamicGraph g(2, {{0, 1, 1}});
    EntropyParams p;
    p.mu = 1.0;
    p.gamma = 1.0;
    SplitGraph s = piecewise_linearize(g, p, 1.0);
    // eps' = 1, n = 2: k = ceil(log2 4) = 2; breakpoints (1, 1/2, 1/4, 0)
    REQUIRE(s.breakpoints[0].size() == 4);
    CHECK(s.breakpoints[0][0] == Catch::Approx(1.0));
    CHECK(s.breakpoints[0][1] == Catch::Approx(0.5));
    CHECK(s.breakpoints[0][2] == Catch::Approx(0.25));
    CHECK(s.breakpoints[0][3] == 0.0);
    REQUIRE(s.copy_count() == 3);
    CHECK(s.cap[0] == Catch::Approx(0.5));
    CHECK(s.cap[1] == Catch::Approx(0.25));
    CHECK(s.cap[2] == Catch::Approx(0.25));
    // marginal weights non-decreasing toward finer copies (concavity)
    CHECK(s.weight[2] >= s.weight[1]);
    CHECK(s.weight[1] >= s.weight[0]);

    EntropyParams bad = p;
    bad.gamma = 0.0;
    CHECK_THROWS_AS(piecewise_linearize(g, bad, 1.0), std::invalid_argument);
}

TEST_CASE("split round trip preserves objective (w-to-g direction)") {
    Rng rng(14);
    for (int trial = 0; trial < 15; ++trial) {
        DynamicGraph g = random_graph(rng, 6, 0.6, 3);
        if (g.alive_count() == 0) continue;
        EntropyParams p;
        p.mu = rng.uniform(0.1, 1.0);
        p.gamma = std::max(1.0, exact_mwm(g).weight);
        SplitGraph s = piecewise_linearize(g, p, 0.5);
        // random feasible x' in the capacitated polytope
        std::vector<double> xp(static_cast<size_t>(s.copy_count()));
        for (int c = 0; c < s.copy_count(); ++c)
            xp[static_cast<size_t>(c)] = rng.uniform() * s.cap[static_cast<size_t>(c)];
        std::vector<double> host_mass, degree;
        s.aggregate(xp, host_mass, degree);
        double lam = 0.0;
        for (double d : degree) lam = std::max(lam, d);
        FractionalAssignment agg(g.edge_count());
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            if (host_mass[static_cast<size_t>(e)] > 0.0) agg.set(e, host_mass[static_cast<size_t>(e)]);
        lam = std::max(lam, membership_ratio(g, agg, g.vertex_count()));
        double shrink = lam > 1.0 ? 0.999 / lam : 1.0;
        for (double& v : xp) v *= shrink;

        double wtx = 0.0;
        for (int c = 0; c < s.copy_count(); ++c)
            wtx += s.weight[static_cast<size_t>(c)] * xp[static_cast<size_t>(c)];
        FractionalAssignment x(g.edge_count());
        for (int c = 0; c < s.copy_count(); ++c) {
            EdgeId e = s.parent[static_cast<size_t>(c)];
            x.set(e, x[e] + xp[static_cast<size_t>(c)] * shrink * 0.0 + xp[static_cast<size_t>(c)]);
        }
        double fx = objective(g, x, p).total;
        CHECK(fx >= wtx - 1e-9);
    }
}

TEST_CASE("greedy oracle named examples") {
    DynamicGraph path(3, {{0, 1, 2}, {1, 2, 1}});
    SplitGraph s = identity_split(path);
    std::vector<double> b(3, 1.0);
    std::vector<double> x = greedy_relaxed_oracle(s, s.weight, b);
    CHECK(x[0] == Catch::Approx(1.0));
    CHECK(x[1] == 0.0);
    double lp = relaxed_lp_opt(s, s.weight, b);
    CHECK(lp == Catch::Approx(2.0));

    DynamicGraph k3(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
    SplitGraph sk = identity_split(k3);
    std::vector<double> xk = greedy_relaxed_oracle(sk, sk.weight, b);
    double val = 0.0;
    for (int c = 0; c < 3; ++c) val += xk[static_cast<size_t>(c)];
    CHECK(val == Catch::Approx(1.0));
    CHECK(relaxed_lp_opt(sk, sk.weight, b) == Catch::Approx(1.5));
    CHECK(2.0 * val >= 1.5);

    // all caps zero
    SplitGraph sz = sk;
    sz.cap.assign(3, 0.0);
    std::vector<double> xz = greedy_relaxed_oracle(sz, sz.weight, b);
    for (double v : xz) CHECK(v == 0.0);
}

TEST_CASE("doubled greedy meets the oracle contract against the LP") {
    Rng rng(808);
    for (int trial = 0; trial < 60; ++trial) {
        DynamicGraph g = random_graph(rng, static_cast<int>(rng.uniform_int(3, 8)), 0.6, 9);
        if (g.alive_count() == 0) continue;
        SplitGraph s = identity_split(g);
        // random caps and random nonnegative coefficients
        for (double& c : s.cap) c = rng.uniform(0.0, 1.0);
        std::vector<double> coeffs(static_cast<size_t>(s.copy_count()));
        for (double& c : coeffs) c = rng.uniform(0.0, 5.0);
        std::vector<double> b(static_cast<size_t>(g.vertex_count()), 1.0);
        std::vector<double> x = greedy_relaxed_oracle(s, coeffs, b);
        // feasibility of the raw greedy
        for (int c = 0; c < s.copy_count(); ++c) {
            CHECK(x[static_cast<size_t>(c)] >= 0.0);
            CHECK(x[static_cast<size_t>(c)] <= s.cap[static_cast<size_t>(c)] + 1e-12);
        }
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            double deg = 0.0;
            for (int c = 0; c < s.copy_count(); ++c) {
                const Edge& ed = g.edge(s.parent[static_cast<size_t>(c)]);
                if (ed.u == v || ed.v == v) deg += x[static_cast<size_t>(c)];
            }
            CHECK(deg <= 1.0 + 1e-9);
        }
        double got = 0.0;
        for (int c = 0; c < s.copy_count(); ++c)
            got += coeffs[static_cast<size_t>(c)] * x[static_cast<size_t>(c)];
        double lp = relaxed_lp_opt(s, coeffs, b);
        CHECK(2.0 * got >= lp - 1e-9);
    }
}

TEST_CASE("evaluator named example on K3") {
    DynamicGraph k3(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
    FractionalAssignment x(3);
    for (EdgeId e = 0; e < 3; ++e) x.set(e, 0.9);
    EvaluatorReport rep = evaluate_violations(k3, x, 0.01);
    CHECK_FALSE(rep.feasible);
    CHECK(rep.lambda_vertex == Catch::Approx(1.8 / 0.96));
    CHECK(rep.lambda == Catch::Approx(2.7 / (1.0 - 0.000225)));
    REQUIRE(rep.members.size() == 1);
    CHECK(rep.members[0].size() == 3);
}

TEST_CASE("evaluator trivial cases") {
    DynamicGraph k3(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
    FractionalAssignment zero(3);
    CHECK(evaluate_violations(k3, zero, 0.05).feasible);

    // bipartite C4 with tiny degrees
    DynamicGraph c4(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
    FractionalAssignment small(4);
    for (EdgeId e = 0; e < 4; ++e) small.set(e, 0.3);
    CHECK(evaluate_violations(c4, small, 0.05).feasible);
}

TEST_CASE("score vectors match the hand computation") {
    double eps = 0.01;
    double alpha = 7.0;
    // K3 at x = 0.9: only the triangle qualifies
    DynamicGraph k3(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
    OddSetEvaluator ev(k3, eps);
    std::vector<double> mass = {0.9, 0.9, 0.9};
    std::vector<double> deg = {1.8, 1.8, 1.8};
    EvaluatorReport rep = ev.evaluate(deg, mass);
    ScoreVector sc = compute_scores(ev, rep, deg, mass, alpha);
    finish_scores(k3, ev, rep, sc);
    double bB = 1.0 - 0.000225;
    for (int v = 0; v < 3; ++v) CHECK(sc.pv[static_cast<size_t>(v)] == 0.0);
    REQUIRE(sc.pB.size() == 1);
    CHECK(sc.pB[0] == Catch::Approx(1.0 / bB));
    CHECK(sc.gamma_x == Catch::Approx(1.0));
    for (EdgeId e = 0; e < 3; ++e) CHECK(sc.l_host[static_cast<size_t>(e)] == Catch::Approx(1.0 / bB));

    // single edge, both endpoints at lambda_x: p_v = 1/b~_v, exp(0) = 1
    DynamicGraph single(2, {{0, 1, 1}});
    OddSetEvaluator ev2(single, 0.05);
    std::vector<double> mass2 = {1.3};
    std::vector<double> deg2 = {1.3, 1.3};
    EvaluatorReport rep2 = ev2.evaluate(deg2, mass2);
    REQUIRE_FALSE(rep2.feasible);
    ScoreVector sc2 = compute_scores(ev2, rep2, deg2, mass2, alpha);
    finish_scores(single, ev2, rep2, sc2);
    double bv = 1.0 - 4.0 * 0.05;
    CHECK(sc2.pv[0] == Catch::Approx(1.0 / bv));
    CHECK(sc2.pv[1] == Catch::Approx(1.0 / bv));
    CHECK(sc2.l_host[0] == Catch::Approx(2.0 / bv));
    CHECK(sc2.gamma_x == Catch::Approx(2.0));
}

TEST_CASE("bin search shortcuts and postconditions") {
    DynamicGraph k3(3, {{0, 1, 3}, {1, 2, 2}, {0, 2, 1}});
    SplitGraph s = identity_split(k3);
    LinearOracle oracle = make_greedy_oracle(s);

    // l = 0: single oracle call suffices
    std::vector<double> zero_l(3, 0.0);
    auto res = bin_search_lagrange(s, s.weight, zero_l, 3.0, 0.0, 0.1, oracle);
    REQUIRE(res.has_value());
    CHECK(res->oracle_calls == 1);

    // huge gamma2: accepted immediately
    std::vector<double> some_l = {1.0, 0.5, 0.25};
    auto res2 = bin_search_lagrange(s, s.weight, some_l, 3.0, 1e9, 0.1, oracle);
    REQUIRE(res2.has_value());
    CHECK(res2->oracle_calls == 1);

    // hand-built l with binding budget: check both postconditions against the
    // LP value of the constrained problem
    std::vector<double> l = {2.0, 1.0, 1.0};
    double gamma2 = 1.2;
    // gamma1 = LP max of w'x s.t. degrees, caps, l'x <= gamma2
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> rhs;
    for (VertexId v = 0; v < 3; ++v) {
        std::vector<Rational> row(3, Rational(0));
        for (int c = 0; c < 3; ++c) {
            const Edge& ed = k3.edge(s.parent[static_cast<size_t>(c)]);
            if (ed.u == v || ed.v == v) row[static_cast<size_t>(c)] = Rational(1);
        }
        a.push_back(row);
        rhs.emplace_back(1);
    }
    for (int c = 0; c < 3; ++c) {
        std::vector<Rational> row(3, Rational(0));
        row[static_cast<size_t>(c)] = Rational(1);
        a.push_back(row);
        rhs.emplace_back(1);
    }
    {
        std::vector<Rational> row;
        for (double lv : l) row.push_back(rational_from_double(lv));
        a.push_back(row);
        rhs.push_back(rational_from_double(gamma2));
    }
    std::vector<Rational> obj;
    for (double wv : s.weight) obj.push_back(rational_from_double(wv));
    double gamma1 = rational_to_double(solve_lp_max(a, rhs, obj).value);
    REQUIRE(gamma1 > 0.0);

    double eps = 0.05;
    auto res3 = bin_search_lagrange(s, s.weight, l, gamma1, gamma2, eps, oracle);
    REQUIRE(res3.has_value());
    CHECK(res3->f_value >= (1.0 - eps) * gamma1 - 1e-9);
    CHECK(res3->l_value <= gamma2 + 1e-9);
}

TEST_CASE("perturbation sandwich") {
    Rng rng(112);
    double eps = 0.05;
    PerturbedBounds pb(eps);
    int dir1 = 0;
    int dir2 = 0;
    for (int trial = 0; trial < 400 && (dir1 < 200 || dir2 < 200); ++trial) {
        DynamicGraph g = random_graph(rng, 8, 0.5, 3);
        if (g.alive_count() == 0) continue;
        FractionalAssignment x = random_polytope_point(rng, g);

        if (dir2 < 200) {
            // direction 2: x in M_G implies (1 - 4 eps) x in the perturbed set
            FractionalAssignment scaled = x.scaled(1.0 - 4.0 * eps);
            std::vector<double> deg = all_degree_masses(g, scaled);
            bool in_tilde = true;
            for (double d : deg)
                if (d > pb.vertex() + 1e-9) in_tilde = false;
            enumerate_odd_sets(g, g.vertex_count(), [&](const std::vector<VertexId>& mem) {
                OddSet b(mem);
                if (odd_set_mass(g, scaled, b) >
                    pb.odd_set(b.size()) + 1e-9)
                    in_tilde = false;
            });
            CHECK(in_tilde);
            ++dir2;
        }
        if (dir1 < 200) {
            // direction 1: rejection-sample a point of the perturbed polytope
            // and check full M_G membership
            FractionalAssignment cand = x.scaled(rng.uniform(0.3, 1.0));
            std::vector<double> deg = all_degree_masses(g, cand);
            bool in_tilde = true;
            for (double d : deg)
                if (d > pb.vertex()) in_tilde = false;
            if (in_tilde) {
                enumerate_odd_sets(g, std::min(g.vertex_count(),
                                               static_cast<int>(std::floor(1.0 / eps))),
                                   [&](const std::vector<VertexId>& mem) {
                                       OddSet b(mem);
                                       if (odd_set_mass(g, cand, b) > pb.odd_set(b.size()))
                                           in_tilde = false;
                                   });
            }
            if (in_tilde) {
                CHECK(check_membership(g, cand, 1.0 / g.vertex_count()).empty());
                ++dir1;
            }
        }
    }
    CHECK(dir1 >= 200);
    CHECK(dir2 >= 200);
}

TEST_CASE("mwu on a single edge") {
    DynamicGraph g(2, {{0, 1, 1}});
    SplitGraph s = identity_split(g);
    MwuConfig cfg;
    cfg.eps = 1.0 / 16.0;
    MwuResult res = mwu_solve(s, cfg, make_greedy_oracle(s));
    // terminal lambda lies in (1, 1 + 8 eps], so the scaled edge value lands
    // between (1 - 4 eps)/(1 + 8 eps) and b~_v = 1 - 4 eps
    double hi = 1.0 - 4.0 * cfg.eps;
    double lo = hi / (1.0 + 8.0 * cfg.eps);
    CHECK(res.x_host[0] <= hi + 1e-6);
    CHECK(res.x_host[0] >= lo - 1e-6);
    CHECK(res.final_lambda <= 1.0 + 8.0 * cfg.eps + 1e-9);
}

TEST_CASE("mwu on K3 meets the envelope and stays feasible") {
    DynamicGraph g(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
    SplitGraph s = identity_split(g);
    MwuConfig cfg;
    cfg.eps = 0.06;
    MwuResult res = mwu_solve(s, cfg, make_greedy_oracle(s));
    // brute-force fractional optimum of K3 is 1
    CHECK(res.objective >= (1.0 - 13.0 * cfg.eps) * (1.0 - 4.0 * cfg.eps) * 1.0);
    CHECK(check_membership(g, res.x_host, 1.0 / 3.0).empty());
}

TEST_CASE("mwu on bipartite C4") {
    DynamicGraph g(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
    SplitGraph s = identity_split(g);
    MwuConfig cfg;
    cfg.eps = 0.05;
    MwuResult res = mwu_solve(s, cfg, make_greedy_oracle(s));
    CHECK(res.objective >= (1.0 - 13.0 * cfg.eps) * (1.0 - 4.0 * cfg.eps) * 2.0);
    CHECK(check_membership(g, res.x_host, 0.25).empty());
}

TEST_CASE("mwu feasibility and envelope on random instances") {
    Rng rng(2718);
    for (int trial = 0; trial < 8; ++trial) {
        DynamicGraph g = random_graph(rng, 8, 0.5, 4);
        if (g.alive_count() == 0) continue;
        SplitGraph s = identity_split(g);
        MwuConfig cfg;
        cfg.eps = 1.0 / 16.0;
        MwuResult res = mwu_solve(s, cfg, make_greedy_oracle(s));
        CHECK(check_membership(g, res.x_host, 1.0 / 8.0).empty());
        double opt = brute_fractional_opt(g);
        CHECK(res.objective >= (1.0 - 13.0 * cfg.eps) * (1.0 - 4.0 * cfg.eps) * opt - 1e-9);
    }
}

TEST_CASE("solve_entropy_matching on the empty graph") {
    DynamicGraph g(4, {});
    EntropyParams p;
    p.mu = 0.5;
    p.gamma = 1.0;
    EntropySolveResult res = solve_entropy_matching(g, p, 0.1);
    CHECK(res.objective == 0.0);
    CHECK(res.x.l1() == 0.0);
}

TEST_CASE("solve_entropy_matching on a single edge vs closed form") {
    DynamicGraph g(2, {{0, 1, 1}});
    EntropyParams p;
    p.mu = 0.5;
    p.gamma = 1.0;
    double best = 0.0;
    for (int i = 1; i <= 1'000'000; ++i) {
        double x = static_cast<double>(i) / 1'000'000.0;
        best = std::max(best, x + 0.5 * x * std::log2(1.0 / x));
    }
    EntropySolveResult res = solve_entropy_matching(g, p, 0.1);
    CHECK(res.objective >= (1.0 - 0.1) * best);
    CHECK(res.x[0] <= 1.0 + 1e-9);
}

TEST_CASE("solve_entropy_matching tracks the frank-wolfe reference") {
    Rng rng(31415);
    int done = 0;
    for (int trial = 0; trial < 12 && done < 6; ++trial) {
        DynamicGraph g = random_graph(rng, 8, 0.5, 4);
        if (g.alive_count() < 2) continue;
        EntropyParams p;
        p.mu = rng.uniform(0.1, 1.0);
        p.gamma = std::max(1.0, exact_mwm(g).weight) * rng.uniform(1.0, 3.0);
        FrankWolfeOptions fwopts;
        fwopts.gap_target = 1e-4;
        FrankWolfeResult fw = frank_wolfe_entropy(g, p, 2000, fwopts);
        EntropySolveResult res = solve_entropy_matching(g, p, 0.1);
        CHECK(check_membership(g, res.x, 1.0 / 8.0).empty());
        CHECK(res.objective >= 0.9 * fw.objective - 1e-9);
        ++done;
    }
    CHECK(done >= 6);
}
