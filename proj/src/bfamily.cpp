#include "sumnet/bfamily.hpp"

#include <algorithm>
#include <set>

#include "sumnet/classify.hpp"

namespace sumnet {

std::vector<Vec3> BFamily::all_vectors() const {
    std::vector<Vec3> out;
    for (const auto& s : sets) out.insert(out.end(), s.begin(), s.end());
    return out;
}

BFamily fixed_base_family(uint32_t p) {
    BFamily fam;
    fam.p = p;
    auto a = [&](int i) { return Vec3::alpha(p, i); };
    fam.sets.push_back({a(1), a(2) + a(3)});
    fam.sets.push_back({a(2), a(1) + a(3)});
    fam.sets.push_back({a(3), a(1) + a(2)});
    return fam;
}

namespace {

bool in_any_coordinate_plane_pair(const Vec3& a, const Vec3& b) {
    for (const auto& pl : kPlanes)
        if (in_coordinate_plane(a, pl.i1, pl.i2) && in_coordinate_plane(b, pl.i1, pl.i2))
            return true;
    return false;
}

}  // namespace

std::optional<BViolation> check_B_conditions(const BFamily& fam) {
    const uint32_t p = fam.p;
    const Vec3 bar = Vec3::all_ones(p);

    // (1) plane membership of the later sets
    for (int l = 4; l <= fam.K(); ++l)
        for (int pl = 0; pl < 3; ++pl)
            if (!in_coordinate_plane(fam.plane_rep(l, pl), kPlanes[pl].i1, kPlanes[pl].i2))
                return BViolation{1, "set " + std::to_string(l) + " vector " +
                                         fam.plane_rep(l, pl).str() + " not in plane (" +
                                         std::to_string(kPlanes[pl].i1) + "," +
                                         std::to_string(kPlanes[pl].i2) + ")"};

    // (2) all-ones in the span of every in-set pair
    for (int l = 1; l <= fam.K(); ++l) {
        const auto& s = fam.sets[l - 1];
        for (size_t a = 0; a < s.size(); ++a)
            for (size_t b = a + 1; b < s.size(); ++b)
                if (!in_span(bar, {s[a], s[b]}))
                    return BViolation{2, "set " + std::to_string(l) + " pair " + s[a].str() +
                                             "," + s[b].str() + " does not span all-ones"};
    }

    // flatten with set membership for the condition-(3) exemption
    struct Tagged {
        Vec3 v;
        int set;  // 1-based
    };
    std::vector<Tagged> all;
    for (int l = 1; l <= fam.K(); ++l)
        for (const auto& v : fam.sets[l - 1]) all.push_back({v, l});

    // (4) pairwise independence
    for (size_t a = 0; a < all.size(); ++a)
        for (size_t b = a + 1; b < all.size(); ++b)
            if (!linearly_independent(all[a].v, all[b].v))
                return BViolation{4, "vectors " + all[a].v.str() + " and " + all[b].v.str() +
                                         " are dependent"};

    // (3) triples
    for (size_t a = 0; a < all.size(); ++a)
        for (size_t b = a + 1; b < all.size(); ++b)
            for (size_t c = b + 1; c < all.size(); ++c) {
                bool one_plane = false;
                for (const auto& pl : kPlanes)
                    if (in_coordinate_plane(all[a].v, pl.i1, pl.i2) &&
                        in_coordinate_plane(all[b].v, pl.i1, pl.i2) &&
                        in_coordinate_plane(all[c].v, pl.i1, pl.i2))
                        one_plane = true;
                if (one_plane) continue;
                if (all[a].set >= 4 && all[a].set == all[b].set && all[b].set == all[c].set)
                    continue;  // a whole later set is exempt
                if (!linearly_independent(all[a].v, all[b].v, all[c].v))
                    return BViolation{3, "triple " + all[a].v.str() + "," + all[b].v.str() + "," +
                                             all[c].v.str() + " is dependent"};
            }
    return std::nullopt;
}

std::vector<Vec3> psi_set(const BFamily& fam) {
    std::set<Vec3> psi;
    auto all = fam.all_vectors();
    for (size_t a = 0; a < all.size(); ++a)
        for (size_t b = a + 1; b < all.size(); ++b) {
            if (in_any_coordinate_plane_pair(all[a], all[b])) continue;
            if (!linearly_independent(all[a], all[b])) continue;
            for (int pl = 0; pl < 3; ++pl)
                psi.insert(plane_intersection(all[a], all[b], kPlanes[pl].i1, kPlanes[pl].i2));
        }
    return std::vector<Vec3>(psi.begin(), psi.end());
}

GenerateBResult generate_B(int K, uint32_t p) {
    if (K < 3) throw std::invalid_argument("generate_B: K must be >= 3");
    if (!is_prime(p)) throw std::invalid_argument("generate_B: p must be prime");

    BFamily fam = fixed_base_family(p);
    if (check_B_conditions(fam)) return NeedLargerPrime{3};

    const Vec3 bar = Vec3::all_ones(p);
    while (fam.K() < K) {
        auto psi = psi_set(fam);
        // Every span <all-ones, psi> meets the (1,2) coordinate plane in one
        // direction, which names the span; collecting those names makes the
        // per-candidate test O(log).
        std::set<Vec3> blocked;
        for (const auto& g : psi) blocked.insert(plane_intersection(bar, g, 1, 2));
        // A valid seed, if any exists, has a scalar multiple with first
        // coordinate zero, so the lexicographic scan ends within p^2 steps.
        std::optional<Vec3> seed;
        for (uint32_t c1 = 0; c1 < p && !seed; ++c1)
            for (uint32_t c2 = 0; c2 < p && !seed; ++c2)
                for (uint32_t c3 = 0; c3 < p && !seed; ++c3) {
                    Vec3 beta(p, c1, c2, c3);
                    if (beta.is_zero()) continue;
                    if (!linearly_independent(beta, bar)) continue;
                    if (!blocked.count(plane_intersection(bar, beta, 1, 2))) seed = beta;
                }
        if (!seed) return NeedLargerPrime{fam.K()};
        std::vector<Vec3> next;
        for (int pl = 0; pl < 3; ++pl)
            next.push_back(plane_intersection(*seed, bar, kPlanes[pl].i1, kPlanes[pl].i2));
        fam.sets.push_back(std::move(next));
        fam.seeds.push_back(*seed);
        if (auto bad = check_B_conditions(fam)) {
            (void)bad;
            return NeedLargerPrime{fam.K() - 1};
        }
    }
    return fam;
}

uint32_t choose_prime(int K) {
    uint32_t p = 5;
    for (;;) {
        if (std::holds_alternative<BFamily>(generate_B(K, p))) return p;
        p = next_prime(p);
    }
}

}  // namespace sumnet
