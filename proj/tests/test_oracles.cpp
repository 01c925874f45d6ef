#include <catch2/catch_amalgamated.hpp>

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

DynamicGraph petersen() {
    std::vector<Edge> es;
    for (int i = 0; i < 5; ++i) es.push_back({i, (i + 1) % 5, 1});       // outer cycle
    for (int i = 0; i < 5; ++i) es.push_back({5 + i, 5 + (i + 2) % 5, 1});  // inner star
    for (int i = 0; i < 5; ++i) es.push_back({i, 5 + i, 1});             // spokes
    return DynamicGraph(10, es);
}

}  // namespace

TEST_CASE("exact_mwm on named instances") {
    DynamicGraph c5(5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 0, 1}});
    CHECK(exact_mwm(c5).weight == Catch::Approx(2.0));

    DynamicGraph path(4, {{0, 1, 1}, {1, 2, 3}, {2, 3, 1}});
    CHECK(exact_mwm(path).weight == Catch::Approx(3.0));
    CHECK(brute_force_mwm_weight(path) == Catch::Approx(3.0));

    DynamicGraph k4(4, {{0, 1, 5}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 5}});
    CHECK(exact_mwm(k4).weight == Catch::Approx(10.0));

    CHECK(exact_mwm(petersen()).weight == Catch::Approx(5.0));
    CHECK(brute_force_mwm_weight(petersen()) == Catch::Approx(5.0));
}

TEST_CASE("matching result is a valid matching") {
    Rng rng(5150);
    for (int trial = 0; trial < 50; ++trial) {
        DynamicGraph g = random_graph(rng, 12, 0.4, 50);
        MatchingResult m = exact_mwm(g);
        std::vector<int> used(12, 0);
        double w = 0.0;
        for (EdgeId e : m.edges) {
            const Edge& ed = g.edge(e);
            CHECK(g.alive(e));
            CHECK(!used[static_cast<size_t>(ed.u)]);
            CHECK(!used[static_cast<size_t>(ed.v)]);
            used[static_cast<size_t>(ed.u)] = used[static_cast<size_t>(ed.v)] = 1;
            w += static_cast<double>(ed.w);
        }
        CHECK(w == Catch::Approx(m.weight));
    }
}

TEST_CASE("blossom matches brute force on 500 random instances") {
    Rng rng(424242);
    for (int trial = 0; trial < 500; ++trial) {
        int n = static_cast<int>(rng.uniform_int(2, 12));
        double p = rng.uniform(0.15, 0.9);
        long long wmax = rng.uniform_int(1, 40);
        DynamicGraph g = random_graph(rng, n, p, wmax);
        // random soft deletions exercise the alive filter
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            if (rng.uniform() < 0.15) g.delete_edge(e);
        double exact = exact_mwm(g).weight;
        double brute = brute_force_mwm_weight(g);
        REQUIRE(exact == Catch::Approx(brute).margin(1e-9));
    }
}

TEST_CASE("brute_fractional_opt equals blossom weight (polytope integrality)") {
    Rng rng(777);
    DynamicGraph tri(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
    CHECK(brute_fractional_opt(tri) == Catch::Approx(1.0));

    DynamicGraph c4(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
    CHECK(brute_fractional_opt(c4) == Catch::Approx(2.0));

    DynamicGraph c5(5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 0, 1}});
    CHECK(brute_fractional_opt(c5) == Catch::Approx(2.0));

    for (int trial = 0; trial < 25; ++trial) {
        DynamicGraph g = random_graph(rng, 7, 0.5, 9);
        CHECK(brute_fractional_opt(g) == Catch::Approx(exact_mwm(g).weight).margin(1e-9));
    }
    DynamicGraph big(9, {});
    CHECK_THROWS_AS(brute_fractional_opt(big), std::invalid_argument);
}

TEST_CASE("frank-wolfe on a single edge approaches the 1-D optimum") {
    DynamicGraph g(2, {{0, 1, 1}});
    EntropyParams p;
    p.mu = 0.5;
    p.gamma = 1.0;
    // 1-D: maximize x + 0.5 x log2(1/x) over [0,1], grid reference
    double best = 0.0;
    for (int i = 1; i <= 2'000'000; ++i) {
        double x = static_cast<double>(i) / 2'000'000.0;
        double v = x + 0.5 * x * std::log2(1.0 / x);
        best = std::max(best, v);
    }
    FrankWolfeResult fw = frank_wolfe_entropy(g, p, 10000);
    CHECK(fw.objective == Catch::Approx(best).margin(1e-4));
    CHECK(fw.gap < 1e-3);
}

TEST_CASE("frank-wolfe first iterate is an exact mwm indicator") {
    DynamicGraph path(4, {{0, 1, 1}, {1, 2, 3}, {2, 3, 1}});
    EntropyParams p;
    p.mu = 0.3;
    p.gamma = 3.0;
    FrankWolfeResult fw = frank_wolfe_entropy(path, p, 1);
    CHECK(fw.x[1] == 1.0);
    CHECK(fw.x[0] == 0.0);
    CHECK(fw.x[2] == 0.0);
}

TEST_CASE("frank-wolfe stays in the matching polytope and gaps trend down") {
    Rng rng(31337);
    for (int trial = 0; trial < 10; ++trial) {
        DynamicGraph g = random_graph(rng, 8, 0.5, 4);
        if (g.edge_count() == 0) continue;
        EntropyParams p;
        p.mu = rng.uniform(0.05, 0.8);
        p.gamma = std::max(1.0, exact_mwm(g).weight);
        FrankWolfeOptions opts;
        opts.record_gaps = true;
        FrankWolfeResult fw = frank_wolfe_entropy(g, p, 300, opts);
        CHECK(check_membership(g, fw.x, 1.0 / 8.0).empty());
        REQUIRE(fw.gap_history.size() >= 10);
        double head = fw.gap_history[1];
        double tail = fw.gap_history.back();
        CHECK(tail <= head + 1e-9);
    }
}

TEST_CASE("frank-wolfe certificate upper bounds the brute optimum (mu tiny)") {
    // with near-zero entropy weight the objective is close to linear, so the
    // certificate must cover the LP optimum up to the entropy range
    Rng rng(8080);
    for (int trial = 0; trial < 8; ++trial) {
        DynamicGraph g = random_graph(rng, 7, 0.6, 5);
        if (g.edge_count() == 0) continue;
        EntropyParams p;
        p.mu = 1e-6;
        p.gamma = std::max(1.0, exact_mwm(g).weight);
        FrankWolfeResult fw = frank_wolfe_entropy(g, p, 400);
        double lp = brute_fractional_opt(g);
        CHECK(fw.objective + fw.gap >= lp - 1e-6);
    }
}
