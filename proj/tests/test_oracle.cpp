#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "support.hpp"
#include "sumnet/oracle.hpp"

using namespace sumnet;

TEST_CASE("the tripod has a solution over GF(2)") {
    auto g = fixtures::graph(fixtures::tripod_rg());
    auto res = brute_force_region(g, 2);
    auto* found = std::get_if<OracleFound<RegionCode>>(&res);
    REQUIRE(found);
    CHECK(!verify_region_code(g, found->code));
    CHECK(found->code.vectors.at(g.region_by_name("R1")) == Vec3(2, 1, 1, 0));
}

TEST_CASE("the ring is infeasible over the first three fields") {
    auto g = fixtures::graph(fixtures::ring_rg());
    for (uint32_t q : {2u, 3u, 5u}) {
        auto res = brute_force_region(g, q);
        REQUIRE(std::holds_alternative<OracleInfeasible>(res));
    }
}

TEST_CASE("a single-source chain is found immediately") {
    auto aug = fixtures::net(fixtures::line_net());
    auto rg = basic_decompose(aug);
    auto res = brute_force_region(rg, 2, {}, 1);
    REQUIRE(std::holds_alternative<OracleFound<RegionCode>>(res));
}

TEST_CASE("edge-level search matches the expected diamond code") {
    auto aug = fixtures::net(fixtures::diamond_net());
    auto res = brute_force_edges(aug, 2);
    auto* found = std::get_if<OracleFound<EdgeCode>>(&res);
    REQUIRE(found);
    CHECK(!verify_edge_code(aug, found->code));
    CHECK(found->code.vectors.at(6) == Vec3(2, 1, 1, 0));
}

TEST_CASE("the diamond without its bypass edge has no code over small fields") {
    // the third coefficient cannot reach the terminal
    auto broken = fixtures::net(
        "sources: s1 s2 s3\nterminals: t1\nnode: a\n"
        "edge: s1 a\nedge: s2 a\nedge: a t1\n");
    for (uint32_t q : {2u, 3u}) {
        auto res = brute_force_edges(broken, q);
        REQUIRE(std::holds_alternative<OracleInfeasible>(res));
    }
}

TEST_CASE("a terminal fed from one plane only is infeasible") {
    auto g = fixtures::graph(
        "regiongraph\n"
        "source S1 1\n"
        "source S2 2\n"
        "source S3 3\n"
        "region R1 : S1 S2\n"
        "terminal T1 1 : R1 S3\n"
        "terminal T2 2 : R1 S2\n"
        "terminal T3 3 : R1 S3\n");
    for (uint32_t q : {2u, 3u}) {
        auto res = brute_force_region(g, q);
        REQUIRE(std::holds_alternative<OracleInfeasible>(res));
    }
}

TEST_CASE("region and edge verdicts agree on random instances") {
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        GenBudget b;
        b.seed = seed + 900;
        b.nodes = 8 + static_cast<int>(seed % 4);
        b.edges = b.nodes + 6 + static_cast<int>(seed % 5);
        b.terminals = 2 + static_cast<int>(seed % 2);
        auto aug = normalize(generate_random_network(b));
        auto rg = basic_decompose(aug);
        for (uint32_t q : {2u, 3u}) {
            auto er = brute_force_edges(aug, q);
            auto rr = brute_force_region(rg, q);
            bool ef = std::holds_alternative<OracleFound<EdgeCode>>(er);
            bool rf = std::holds_alternative<OracleFound<RegionCode>>(rr);
            REQUIRE(!std::holds_alternative<OracleExhausted>(er));
            REQUIRE(!std::holds_alternative<OracleExhausted>(rr));
            REQUIRE(ef == rf);
            if (ef) {
                REQUIRE(!verify_edge_code(aug, std::get<OracleFound<EdgeCode>>(er).code));
                REQUIRE(!verify_region_code(rg, std::get<OracleFound<RegionCode>>(rr).code));
            }
        }
    }
}

TEST_CASE("searches are deterministic") {
    auto g = fixtures::graph(fixtures::funnel_rg());
    auto a = brute_force_region(g, 3);
    auto b = brute_force_region(g, 3);
    auto* fa = std::get_if<OracleFound<RegionCode>>(&a);
    auto* fb = std::get_if<OracleFound<RegionCode>>(&b);
    REQUIRE(fa);
    REQUIRE(fb);
    CHECK(fa->code.vectors == fb->code.vectors);
    CHECK(fa->stats.nodes == fb->stats.nodes);
}

TEST_CASE("a one-node budget reports exhaustion") {
    auto g = fixtures::graph(fixtures::ring_rg());
    SearchBudget tiny;
    tiny.node_limit = 1;
    auto res = brute_force_region(g, 2, tiny);
    CHECK(std::holds_alternative<OracleExhausted>(res));
}
