#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "sumnet/gf.hpp"

using namespace sumnet;

TEST_CASE("field arithmetic and inverses") {
    for (uint32_t p : {2u, 3u, 5u, 7u, 11u}) {
        Gf f(p);
        for (uint32_t a = 1; a < p; ++a) {
            CHECK(f.mul(a, f.inv(a)) == 1);
        }
        CHECK(f.sub(0, 1) == p - 1);
    }
    CHECK(is_prime(2));
    CHECK(is_prime(31));
    CHECK(!is_prime(1));
    CHECK(!is_prime(91));
    CHECK(next_prime(5) == 7);
    CHECK(next_prime(7) == 11);
}

TEST_CASE("alpha and all-ones") {
    CHECK(Vec3::alpha(5, 1) == Vec3(5, 1, 0, 0));
    CHECK(Vec3::alpha(5, 3) == Vec3(5, 0, 0, 1));
    CHECK(Vec3::all_ones(5) == Vec3(5, 1, 1, 1));
    CHECK(Vec3::all_ones(5, 1) == Vec3::alpha(5, 1));
    CHECK(Vec3::all_ones(7, 2) == Vec3(7, 1, 1, 0));
}

TEST_CASE("span membership with coefficients") {
    // all-ones from alpha3 and alpha1+alpha2 over GF(2)
    Vec3 bar = Vec3::all_ones(2);
    auto coeff = in_span(bar, {Vec3::alpha(2, 3), Vec3(2, 1, 1, 0)});
    REQUIRE(coeff);
    CHECK(*coeff == std::vector<uint32_t>{1, 1});

    CHECK(!in_span(Vec3::all_ones(3), {Vec3::alpha(3, 1), Vec3::alpha(3, 3)}));

    // all-ones from 2a1+3a3 and a1+3a2 over GF(7)
    auto c7 = in_span(Vec3::all_ones(7), {Vec3(7, 2, 0, 3), Vec3(7, 1, 3, 0)});
    REQUIRE(c7);
    // verify the coefficients reproduce the vector
    Vec3 acc = Vec3(7, 2, 0, 3).scaled((*c7)[0]) + Vec3(7, 1, 3, 0).scaled((*c7)[1]);
    CHECK(acc == Vec3::all_ones(7));
}

TEST_CASE("span membership of zero and empty generators") {
    CHECK(in_span(Vec3::zero(5), {}));
    CHECK(!in_span(Vec3::alpha(5, 1), {}));
    CHECK(in_span(Vec3::zero(5), {Vec3::alpha(5, 2)}));
}

TEST_CASE("normalization scales the first nonzero coordinate to one") {
    CHECK(Vec3(7, 2, 0, 3).normalized() == Vec3(7, 1, 0, 5));
    CHECK(Vec3(7, 0, 4, 2).normalized() == Vec3(7, 0, 1, 4));
    CHECK(Vec3::zero(7).normalized() == Vec3::zero(7));
}

TEST_CASE("plane intersections reproduce the seeded representatives") {
    // seed a1+3a2 with all-ones: plane (1,3) meets in 2a1+3a3
    for (uint32_t p : {7u, 11u, 13u}) {
        Vec3 seed(p, 1, 3, 0);
        Vec3 bar = Vec3::all_ones(p);
        Vec3 w13 = plane_intersection(seed, bar, 1, 3);
        CHECK(w13 == Vec3(p, 2, 0, 3).normalized());
        Vec3 w23 = plane_intersection(seed, bar, 2, 3);
        CHECK(w23 == Vec3(p, 0, 2, p - 1).normalized());
    }
    // trivial case: the span already holds a plane axis
    CHECK(plane_intersection(Vec3::alpha(5, 1), Vec3::alpha(5, 2), 1, 3) == Vec3::alpha(5, 1));
    // degenerate: span equals the plane
    CHECK_THROWS_AS(plane_intersection(Vec3::alpha(5, 1), Vec3::alpha(5, 3), 1, 3),
                    std::domain_error);
    CHECK_THROWS_AS(plane_intersection(Vec3::alpha(5, 1), Vec3::alpha(5, 1).scaled(2), 1, 2),
                    std::domain_error);
}

TEST_CASE("span enumeration up to scalars") {
    auto members = span_members_normalized({Vec3::alpha(3, 1), Vec3::alpha(3, 2)}, 3);
    CHECK(members.size() == 4);  // (9-1)/(3-1)
    for (const auto& v : members) CHECK(v.c[2] == 0);
    auto full = span_members_normalized(
        {Vec3::alpha(2, 1), Vec3::alpha(2, 2), Vec3::alpha(2, 3)}, 2);
    CHECK(full.size() == 7);
    CHECK(span_members_normalized({}, 5).empty());
}

TEST_CASE("independence") {
    CHECK(linearly_independent(Vec3::alpha(5, 1), Vec3::alpha(5, 2)));
    CHECK(!linearly_independent(Vec3(5, 1, 2, 0), Vec3(5, 2, 4, 0)));
    CHECK(linearly_independent(Vec3::alpha(5, 1), Vec3::alpha(5, 2), Vec3::alpha(5, 3)));
    // dependent mod 2 only
    Vec3 a(2, 0, 1, 1), b(2, 1, 0, 1), c(2, 1, 1, 0);
    CHECK(!linearly_independent(a, b, c));
    CHECK(linearly_independent(Vec3(3, 0, 1, 1), Vec3(3, 1, 0, 1), Vec3(3, 1, 1, 0)));
}
