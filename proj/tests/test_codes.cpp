#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "support.hpp"
#include "sumnet/codes.hpp"

using namespace sumnet;

namespace {

RegionCode named_code(const RegionGraph& rg, uint32_t p,
                      const std::vector<std::pair<std::string, Vec3>>& entries) {
    RegionCode code;
    code.p = p;
    for (const auto& [name, v] : entries) code.vectors[rg.region_by_name(name)] = v;
    return code;
}

}  // namespace

TEST_CASE("the funnel's hand-built solution verifies") {
    auto g = fixtures::graph(fixtures::funnel_rg());
    const uint32_t p = 5;
    auto a = [&](int i) { return Vec3::alpha(p, i); };
    Vec3 bar = Vec3::all_ones(p);
    auto code = named_code(g, p,
                           {{"S1", a(1)},
                            {"S2", a(2)},
                            {"S3", a(3)},
                            {"R1", a(1)},
                            {"R2", a(1)},
                            {"R3", a(2) + a(3)},
                            {"R4", a(1)},
                            {"R5", bar},
                            {"T1", bar},
                            {"T2", bar},
                            {"T3", bar}});
    CHECK(!verify_region_code(g, code));

    // breaking the terminal value is caught
    auto bad = code;
    bad.vectors[g.region_by_name("T1")] = a(1);
    auto v = verify_region_code(g, bad);
    REQUIRE(v);
    CHECK(v->clause == CodeViolation::TerminalValue);

    // leaving a parent span is caught
    auto bad2 = code;
    bad2.vectors[g.region_by_name("R3")] = a(1);
    auto v2 = verify_region_code(g, bad2);
    REQUIRE(v2);
    CHECK(v2->clause == CodeViolation::SpanMembership);
    CHECK(v2->id == g.region_by_name("R3"));

    // missing region
    auto bad3 = code;
    bad3.vectors.erase(g.region_by_name("R5"));
    CHECK(verify_region_code(g, bad3)->clause == CodeViolation::Missing);
}

TEST_CASE("pi assignment follows the class structure of the tripod") {
    auto g = fixtures::graph(fixtures::tripod_rg());
    auto prof = compute_profile(g);
    auto chr = character_partition(g, prof);
    REQUIRE(chr.halt == HaltReason::NoConnections);
    auto fam = std::get<BFamily>(generate_B(3, 5));
    auto code = assign_pi_code(chr.partition, g, prof, fam);
    CHECK(code.vectors.at(g.region_by_name("R1")) == Vec3(5, 1, 1, 0));
    for (int i = 1; i <= 3; ++i)
        CHECK(code.vectors.at(g.source_region(i)) == Vec3::alpha(5, i));
}

TEST_CASE("pi assignment with the published extension set on the lattice") {
    auto g = fixtures::graph(fixtures::lattice_rg());
    auto prof = compute_profile(g);
    auto chr = character_partition(g, prof);
    REQUIRE(chr.halt == HaltReason::NoConnections);
    const uint32_t p = 7;
    BFamily fam = fixed_base_family(p);
    fam.sets.push_back({Vec3(p, 1, 3, 0), Vec3(p, 2, 0, 3), Vec3(p, 0, 2, p - 1)});
    REQUIRE(!check_B_conditions(fam));
    auto code = assign_pi_code(chr.partition, g, prof, fam);
    // the big class supplies alpha_1 on its source view and alpha_2+alpha_3
    // off-plane; the two-region class draws the example plane vectors
    auto a = [&](int i) { return Vec3::alpha(p, i); };
    CHECK(code.vectors.at(g.region_by_name("R1")) == a(1));
    CHECK(code.vectors.at(g.region_by_name("R4")) == a(1));
    CHECK(code.vectors.at(g.region_by_name("R7")) == a(1));
    CHECK(code.vectors.at(g.region_by_name("R3")) == a(2) + a(3));
    CHECK(code.vectors.at(g.region_by_name("R5")) == a(2) + a(3));
    CHECK(code.vectors.at(g.region_by_name("R2")) == Vec3(p, 2, 0, 3));
    CHECK(code.vectors.at(g.region_by_name("R6")) == Vec3(p, 0, 2, p - 1));
}

TEST_CASE("a compatible trivial partition assigns plane vectors directly") {
    // wide lambda sets keep the singleton classes unconnected
    auto g = fixtures::graph(
        "regiongraph\n"
        "source S1 1\n"
        "source S2 2\n"
        "source S3 3\n"
        "region A1 : S1 S2\n"
        "region A2 : S1 S2\n"
        "region B1 : S1 S3\n"
        "region B2 : S1 S3\n"
        "region C1 : S2 S3\n"
        "region C2 : S2 S3\n"
        "terminal T1 1 : A1 B1 C1\n"
        "terminal T2 2 : A2 B2 C2\n"
        "terminal T3 3 : A1 B2 C1\n");
    auto prof = compute_profile(g);
    REQUIRE(prof.separable);
    auto part = trivial_partition(prof.pi, g);
    REQUIRE(is_compatible(part, g, prof).compatible);
    const int K = part.class_count();
    auto fam = std::get<BFamily>(generate_B(K, choose_prime(K)));
    auto code = assign_pi_code(part, g, prof, fam);
    for (int i = 1; i <= 3; ++i)
        CHECK(code.vectors.at(g.source_region(i)) == Vec3::alpha(fam.p, i));
    // every coding region carries its class's plane representative
    CHECK(in_coordinate_plane(code.vectors.at(g.region_by_name("A1")), 1, 2));
    CHECK(in_coordinate_plane(code.vectors.at(g.region_by_name("B2")), 1, 3));
    CHECK(in_coordinate_plane(code.vectors.at(g.region_by_name("C1")), 2, 3));
    auto full = extend_code(g, prof, code);
    CHECK(!verify_region_code(g, full));
}

TEST_CASE("assignment refuses incompatible partitions") {
    auto g = fixtures::graph(fixtures::ring_rg());
    auto prof = compute_profile(g);
    auto chr = character_partition(g, prof);
    auto fam = std::get<BFamily>(generate_B(6, 17));
    CHECK_THROWS_AS(assign_pi_code(chr.partition, g, prof, fam), std::invalid_argument);
}

TEST_CASE("extension pushes lambda contributions to every terminal") {
    auto g = fixtures::graph(fixtures::tripod_rg());
    auto prof = compute_profile(g);
    auto chr = character_partition(g, prof);
    auto fam = std::get<BFamily>(generate_B(3, 5));
    auto pi_code = assign_pi_code(chr.partition, g, prof, fam);
    auto full = extend_code(g, prof, pi_code);
    CHECK(!verify_region_code(g, full));
    Vec3 bar = Vec3::all_ones(5);
    for (int j = 1; j <= 3; ++j) CHECK(full.vectors.at(g.terminal_region(j)) == bar);
}

TEST_CASE("regions reaching no terminal copy a parent") {
    auto g = fixtures::graph(
        "regiongraph\n"
        "source S1 1\n"
        "source S2 2\n"
        "source S3 3\n"
        "region R1 : S1 S2\n"
        "region DEAD : R1 S3\n"
        "terminal T1 1 : R1 S3\n"
        "terminal T2 2 : R1 S3\n"
        "terminal T3 3 : R1 S3\n");
    auto prof = compute_profile(g);
    CHECK(prof.labels[g.region_by_name("DEAD")].empty());
    auto chr = character_partition(g, prof);
    auto fam = std::get<BFamily>(generate_B(3, 5));
    auto full = extend_code(g, prof, assign_pi_code(chr.partition, g, prof, fam));
    CHECK(!verify_region_code(g, full));
    int dead = g.region_by_name("DEAD");
    CHECK(full.vectors.at(dead) == full.vectors.at(*g.parents[dead].begin()));
}

TEST_CASE("lifting a region code is constant on regions and verifier-clean") {
    auto aug = fixtures::net(fixtures::diamond_net());
    auto rg = basic_decompose(aug);
    auto prof = compute_profile(rg);
    auto chr = character_partition(rg, prof);
    auto fam = std::get<BFamily>(generate_B(3, 5));
    auto full = extend_code(rg, prof, assign_pi_code(chr.partition, rg, prof, fam));
    REQUIRE(!verify_region_code(rg, full));
    auto edge = lift_to_edges(aug, rg, full);
    CHECK(!verify_edge_code(aug, edge));
    // the junction edge carries alpha1+alpha2
    CHECK(edge.vectors.at(6) == Vec3(5, 1, 1, 0));
    // all edges of one region share a vector
    for (const auto& r : rg.regions) {
        for (int e : r.edges) CHECK(edge.vectors.at(e) == full.vectors.at(r.id));
    }
}

TEST_CASE("single-source chains carry the unit vector end to end") {
    auto aug = fixtures::net(fixtures::line_net());
    auto rg = basic_decompose(aug);
    RegionCode code;
    code.p = 5;
    code.vectors[0] = Vec3::alpha(5, 1);
    REQUIRE(!verify_region_code(rg, code, 1));
    auto edge = lift_to_edges(aug, rg, code);
    CHECK(!verify_edge_code(aug, edge));
    for (int e = 1; e <= 3; ++e) CHECK(edge.vectors.at(e) == Vec3::alpha(5, 1));
}

TEST_CASE("edge verifier pinpoints a broken span constraint") {
    auto aug = fixtures::net(fixtures::diamond_net());
    EdgeCode code;
    code.p = 5;
    auto a = [&](int i) { return Vec3::alpha(5, i); };
    Vec3 bar = Vec3::all_ones(5);
    code.vectors[1] = a(1);
    code.vectors[2] = a(2);
    code.vectors[3] = a(3);
    code.vectors[4] = a(1);
    code.vectors[5] = a(2);
    code.vectors[6] = a(3);  // not in span{a1, a2}
    code.vectors[7] = a(3);
    code.vectors[8] = bar;
    auto v = verify_edge_code(aug, code);
    REQUIRE(v);
    CHECK(v->clause == CodeViolation::SpanMembership);
    CHECK(v->id == 6);
}

TEST_CASE("code files round-trip through json") {
    auto g = fixtures::graph(fixtures::tripod_rg());
    auto prof = compute_profile(g);
    auto chr = character_partition(g, prof);
    auto fam = std::get<BFamily>(generate_B(3, 5));
    auto full = extend_code(g, prof, assign_pi_code(chr.partition, g, prof, fam));
    std::string text = code_to_json(full, g);
    auto parsed = parse_code_json(text);
    CHECK(parsed.level == "region");
    CHECK(parsed.p == 5);
    auto bound = bind_region_code(parsed, g);
    CHECK(bound.vectors == full.vectors);

    auto aug = fixtures::net(fixtures::diamond_net());
    EdgeCode ec;
    ec.p = 2;
    for (int e = 1; e <= aug.total_edges; ++e) ec.vectors[e] = Vec3::all_ones(2);
    auto parsed2 = parse_code_json(code_to_json(ec));
    CHECK(parsed2.level == "edge");
    CHECK(bind_edge_code(parsed2).vectors == ec.vectors);

    CHECK_THROWS_AS(parse_code_json("{\"prime\": 4, \"vectors\": {}}"), ParseError);
    CHECK_THROWS_AS(parse_code_json("{\"vectors\": {}}"), ParseError);
}

TEST_CASE("constructed plane codes stay inside their parents' spans") {
    // the in-plane span condition of the assignment, across random instances
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        auto rg = support::random_separable_rg(seed + 300, 3, 3);
        auto prof = compute_profile(rg);
        auto chr = character_partition(rg, prof);
        if (chr.halt != HaltReason::NoConnections) continue;
        auto rep = is_compatible(chr.partition, rg, prof);
        if (!rep.compatible) continue;
        const int K = std::max(3, chr.partition.class_count());
        auto fam = std::get<BFamily>(generate_B(K, choose_prime(K)));
        auto pi_code = assign_pi_code(chr.partition, rg, prof, fam);
        for (int p = 0; p < 3; ++p) {
            auto open = prof.planes[p];
            open.erase(rg.source_region(kPlanes[p].i1));
            open.erase(rg.source_region(kPlanes[p].i2));
            for (int r : open) {
                std::vector<Vec3> gens;
                for (int q : rg.parents[r]) gens.push_back(pi_code.vectors.at(q));
                REQUIRE(in_span(pi_code.vectors.at(r), gens));
            }
        }
        auto full = extend_code(rg, prof, pi_code);
        REQUIRE(!verify_region_code(rg, full));
    }
}
