#ifndef SUMNET_BFAMILY_HPP
#define SUMNET_BFAMILY_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sumnet/gf.hpp"

namespace sumnet {

// A family B_1..B_K of vector sets over GF(p)^3. B_1..B_3 are the fixed
// source sets {alpha_i, alpha_j1 + alpha_j2}; each later set holds one
// representative per coordinate plane, all drawn from one seed's span with
// the all-ones vector.
struct BFamily {
    uint32_t p = 0;
    // sets[l] has 2 vectors for l < 3 and 3 vectors (plane order (1,2),
    // (1,3), (2,3)) for l >= 3.
    std::vector<std::vector<Vec3>> sets;
    std::vector<Vec3> seeds;  // seed used for sets[l], l >= 3

    int K() const { return static_cast<int>(sets.size()); }
    // plane representative beta^(l)_{i1,i2}; l is 1-based and >= 4
    const Vec3& plane_rep(int l, int plane) const { return sets[l - 1][plane]; }
    std::vector<Vec3> all_vectors() const;
};

BFamily fixed_base_family(uint32_t p);  // B_1..B_3

struct BViolation {
    int condition;  // 1..4
    std::string detail;
};

// Exhaustive check of the four family conditions:
//  (1) every later-set member lies in its coordinate plane;
//  (2) within each set, every pair spans the all-ones vector;
//  (3) every cross-plane triple that is not one whole later set is
//      linearly independent;
//  (4) all pairs are linearly independent.
std::optional<BViolation> check_B_conditions(const BFamily& fam);

struct NeedLargerPrime {
    int reached_K;  // family size at which the seed search ran dry
};

using GenerateBResult = std::variant<BFamily, NeedLargerPrime>;

// Deterministic construction: extends the fixed base family one set at a
// time, seeding each with the lexicographically first vector outside every
// blocked span <all-ones, psi>. The returned family always passes
// check_B_conditions.
GenerateBResult generate_B(int K, uint32_t p);

// Smallest prime, escalating through 5, 7, 11, ..., at which generate_B
// succeeds for this K.
uint32_t choose_prime(int K);

// The forbidden-direction set Psi built from the family so far; exposed for
// tests of the seed search.
std::vector<Vec3> psi_set(const BFamily& fam);

}  // namespace sumnet

#endif
