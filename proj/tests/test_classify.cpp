#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "support.hpp"
#include "sumnet/classify.hpp"

using namespace sumnet;
using support::ids_of;
using support::names_of;

TEST_CASE("pi is the union of the three pairwise super regions") {
    auto tripod = fixtures::graph(fixtures::tripod_rg());
    CHECK(names_of(tripod, compute_pi(tripod)) ==
          std::set<std::string>{"S1", "S2", "S3", "R1"});

    auto funnel = fixtures::graph(fixtures::funnel_rg());
    CHECK(names_of(funnel, compute_pi(funnel)) ==
          std::set<std::string>{"S1", "S2", "S3", "R1", "R2", "R3", "R4"});

    auto ring = fixtures::graph(fixtures::ring_rg());
    CHECK(names_of(ring, compute_pi(ring)) ==
          std::set<std::string>{"S1", "S2", "S3", "P1", "P2", "P3"});
}

TEST_CASE("labels propagate reverse-topologically") {
    auto funnel = fixtures::graph(fixtures::funnel_rg());
    auto prof = compute_profile(funnel);
    CHECK(prof.labels[funnel.region_by_name("R5")] == std::set<int>{2, 3});
    CHECK(prof.labels[funnel.region_by_name("S1")] == std::set<int>{1, 2, 3});
    CHECK(prof.labels[funnel.region_by_name("R4")] == std::set<int>{2});

    auto tripod = fixtures::graph(fixtures::tripod_rg());
    auto tprof = compute_profile(tripod);
    CHECK(tprof.labels[tripod.region_by_name("R1")] == std::set<int>{1, 2, 3});
}

TEST_CASE("labels agree with per-region forward reachability") {
    for (uint64_t seed = 1; seed <= 50; ++seed) {
        auto rg = support::random_separable_rg(seed, 3, 3 + static_cast<int>(seed % 3));
        auto prof = compute_profile(rg);
        for (int r = 0; r < rg.region_count(); ++r) {
            std::set<int> direct;
            for (int j = 1; j <= rg.n; ++j)
                if (region_reaches(rg, r, rg.terminal_region(j))) direct.insert(j);
            REQUIRE(prof.labels[r] == direct);
        }
    }
}

TEST_CASE("omega and lambda tables for the funnel instance") {
    auto g = fixtures::graph(fixtures::funnel_rg());
    auto prof = compute_profile(g);
    CHECK(names_of(g, prof.omega.at({1})) == std::set<std::string>{"T1"});
    CHECK(names_of(g, prof.omega.at({2})) == std::set<std::string>{"T2"});
    CHECK(names_of(g, prof.omega.at({3})) == std::set<std::string>{"T3"});
    CHECK(names_of(g, prof.omega.at({2, 3})) == std::set<std::string>{"R5"});
    CHECK(prof.omega.size() == 4);

    CHECK(names_of(g, prof.lambda.at({1})) == std::set<std::string>{"R1", "R3"});
    CHECK(names_of(g, prof.lambda.at({2})) == std::set<std::string>{"R4"});
    CHECK(names_of(g, prof.lambda.at({3})) == std::set<std::string>{"R3"});
    CHECK(names_of(g, prof.lambda.at({2, 3})) == std::set<std::string>{"R2", "R3"});
    CHECK(!prof.separable);
}

TEST_CASE("omega and lambda tables for the tripod and ring instances") {
    auto tri = fixtures::graph(fixtures::tripod_rg());
    auto tp = compute_profile(tri);
    for (int j = 1; j <= 3; ++j) {
        CHECK(names_of(tri, tp.omega_of(j)) == std::set<std::string>{"T" + std::to_string(j)});
        CHECK(names_of(tri, tp.lambda_of(j)) == std::set<std::string>{"R1", "S3"});
    }
    CHECK(tp.separable);

    auto ring = fixtures::graph(fixtures::ring_rg());
    auto rp = compute_profile(ring);
    CHECK(names_of(ring, rp.lambda_of(1)) == std::set<std::string>{"S1", "P1"});
    CHECK(names_of(ring, rp.lambda_of(2)) == std::set<std::string>{"P1", "P2"});
    CHECK(names_of(ring, rp.lambda_of(3)) == std::set<std::string>{"P2", "P3"});
    CHECK(rp.separable);
}

TEST_CASE("distinct omega entries never share a region") {
    for (uint64_t seed = 1; seed <= 50; ++seed) {
        GenBudget b;
        b.seed = seed;
        b.nodes = 9 + static_cast<int>(seed % 4);
        b.edges = b.nodes + 8;
        b.terminals = 2 + static_cast<int>(seed % 3);
        auto rg = basic_decompose(normalize(generate_random_network(b)));
        auto prof = compute_profile(rg);
        std::set<int> seen;
        for (const auto& [iset, regions] : prof.omega)
            for (int r : regions) REQUIRE(seen.insert(r).second);
    }
}

TEST_CASE("assumption check flags terminals inside a pairwise super region") {
    auto tri = fixtures::graph(fixtures::tripod_rg());
    CHECK(!compute_profile(tri).assumption1);

    auto bad = fixtures::graph(
        "regiongraph\n"
        "source S1 1\n"
        "source S2 2\n"
        "source S3 3\n"
        "region R1 : S1 S2\n"
        "terminal T1 1 : S1 S3\n"
        "terminal T2 2 : R1 S3\n"
        "terminal T3 3 : R1 S3\n");
    auto prof = compute_profile(bad);
    REQUIRE(prof.assumption1);
    CHECK(prof.assumption1->terminal_index == 1);
    CHECK(kPlanes[prof.assumption1->plane].i1 == 1);
    CHECK(kPlanes[prof.assumption1->plane].i2 == 3);
}

TEST_CASE("network-derived instances with full connectivity satisfy the assumption") {
    for (uint64_t seed = 1; seed <= 40; ++seed) {
        GenBudget b;
        b.seed = seed + 40;
        b.nodes = 9;
        b.edges = 17;
        b.terminals = 3;
        auto rg = basic_decompose(normalize(generate_random_network(b)));
        REQUIRE(!compute_profile(rg).assumption1);
    }
}

TEST_CASE("separable instances keep well-spread lambda sets") {
    // |Lambda_j| >= 2, T_j inside the open closure of Lambda_j, and no
    // Lambda_j trapped in a single pairwise super region
    int checked = 0;
    for (uint64_t seed = 1; checked < 500; ++seed) {
        auto rg = support::random_separable_rg(seed, 3, 2 + static_cast<int>(seed % 4));
        auto prof = compute_profile(rg);
        REQUIRE(prof.separable);
        REQUIRE(!prof.assumption1);
        for (int j = 1; j <= rg.n; ++j) {
            auto lam = prof.lambda_of(j);
            REQUIRE(lam.size() >= 2);
            auto open = super_region_open(rg, lam);
            REQUIRE(open.count(rg.terminal_region(j)));
            for (int p = 0; p < 3; ++p) {
                bool inside = true;
                for (int q : lam)
                    if (!prof.planes[p].count(q)) inside = false;
                REQUIRE(!inside);
            }
        }
        ++checked;
    }
}
