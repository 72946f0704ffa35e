#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "moeaad/operators.hpp"
#include "moeaad/problems.hpp"
#include "moeaad/rng.hpp"

using Catch::Approx;
using namespace moeaad;

TEST_CASE("sbx with zero crossover rate copies the parents") {
    Rng rng(1);
    const DecisionVector p1 = {0.1, 0.2, 0.3};
    const DecisionVector p2 = {0.9, 0.8, 0.7};
    const std::vector<double> lo(3, 0.0), hi(3, 1.0);
    const auto [c1, c2] = sbx(p1, p2, lo, hi, 0.0, 30.0, rng);
    REQUIRE(c1 == p1);
    REQUIRE(c2 == p2);
}

TEST_CASE("sbx preserves the per-variable parent mean away from the box edges") {
    Rng rng(2);
    const DecisionVector p1 = {0.4, 0.45, 0.5};
    const DecisionVector p2 = {0.6, 0.55, 0.5};
    const std::vector<double> lo(3, -100.0), hi(3, 100.0);  // clamping never kicks in
    for (int rep = 0; rep < 2000; ++rep) {
        const auto [c1, c2] = sbx(p1, p2, lo, hi, 1.0, 30.0, rng);
        for (int i = 0; i < 3; ++i) {
            REQUIRE(c1[i] + c2[i] == Approx(p1[i] + p2[i]).margin(1e-9));
        }
        // identical coordinates never move
        REQUIRE(c1[2] == 0.5);
        REQUIRE(c2[2] == 0.5);
    }
}

TEST_CASE("sbx children stay inside the box") {
    Rng rng(3);
    const std::vector<double> lo = {0.0, -1.0}, hi = {1.0, 2.0};
    for (int rep = 0; rep < 5000; ++rep) {
        DecisionVector p1 = {rng.uniform(lo[0], hi[0]), rng.uniform(lo[1], hi[1])};
        DecisionVector p2 = {rng.uniform(lo[0], hi[0]), rng.uniform(lo[1], hi[1])};
        const auto [c1, c2] = sbx(p1, p2, lo, hi, 1.0, 5.0, rng);
        for (int i = 0; i < 2; ++i) {
            REQUIRE(c1[i] >= lo[i]);
            REQUIRE(c1[i] <= hi[i]);
            REQUIRE(c2[i] >= lo[i]);
            REQUIRE(c2[i] <= hi[i]);
        }
    }
}

TEST_CASE("polynomial mutation respects rate zero and the box") {
    Rng rng(4);
    const std::vector<double> lo(4, 0.0), hi(4, 1.0);
    DecisionVector x = {0.1, 0.5, 0.9, 0.0};
    DecisionVector before = x;
    polynomial_mutation(x, lo, hi, 0.0, 20.0, rng);
    REQUIRE(x == before);
    for (int rep = 0; rep < 5000; ++rep) {
        DecisionVector y = {rng.uniform(), rng.uniform(), rng.uniform(), rng.uniform()};
        polynomial_mutation(y, lo, hi, 1.0, 20.0, rng);
        for (double v : y) {
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 1.0);
        }
    }
}

TEST_CASE("polynomial mutation with rate one moves interior points") {
    Rng rng(5);
    const std::vector<double> lo(1, 0.0), hi(1, 1.0);
    int moved = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        DecisionVector x = {0.5};
        polynomial_mutation(x, lo, hi, 1.0, 20.0, rng);
        if (x[0] != 0.5) ++moved;
    }
    REQUIRE(moved > 990);  // u == 0.5 exactly is the only no-op
}

TEST_CASE("variation produces feasible evaluated offspring") {
    Rng rng(6);
    const Problem prob = make_problem("wfg4", 3);
    VariationParams vp;
    Solution a, b;
    a.x.resize(prob.n);
    b.x.resize(prob.n);
    for (int i = 0; i < prob.n; ++i) {
        a.x[i] = rng.uniform(prob.lower[i], prob.upper[i]);
        b.x[i] = rng.uniform(prob.lower[i], prob.upper[i]);
    }
    a.f = evaluate(prob, a.x);
    b.f = evaluate(prob, b.x);
    for (int rep = 0; rep < 500; ++rep) {
        const Solution child = variation(a, b, prob, vp, rng);
        REQUIRE(child.x.size() == static_cast<size_t>(prob.n));
        REQUIRE(child.f.size() == static_cast<size_t>(prob.m));
        for (int i = 0; i < prob.n; ++i) {
            REQUIRE(child.x[i] >= prob.lower[i]);
            REQUIRE(child.x[i] <= prob.upper[i]);
        }
        REQUIRE(child.f == evaluate(prob, child.x));
    }
}

TEST_CASE("variation without crossover or mutation returns a parent") {
    Rng rng(7);
    const Problem prob = make_problem("dtlz2", 3);
    VariationParams vp;
    vp.p_c = 0.0;
    vp.p_m = 1e-300;  // effectively zero while keeping the 1/n default disabled
    Solution a, b;
    a.x.assign(prob.n, 0.25);
    b.x.assign(prob.n, 0.75);
    a.f = evaluate(prob, a.x);
    b.f = evaluate(prob, b.x);
    for (int rep = 0; rep < 50; ++rep) {
        const Solution child = variation(a, b, prob, vp, rng);
        REQUIRE((child.x == a.x || child.x == b.x));
    }
}

TEST_CASE("operators are deterministic for a fixed seed") {
    const Problem prob = make_problem("dtlz2", 3);
    VariationParams vp;
    Solution a, b;
    a.x.assign(prob.n, 0.3);
    b.x.assign(prob.n, 0.6);
    a.f = evaluate(prob, a.x);
    b.f = evaluate(prob, b.x);
    Rng r1(42), r2(42);
    for (int rep = 0; rep < 20; ++rep) {
        const Solution c1 = variation(a, b, prob, vp, r1);
        const Solution c2 = variation(a, b, prob, vp, r2);
        REQUIRE(c1.x == c2.x);
        REQUIRE(c1.f == c2.f);
    }
}
