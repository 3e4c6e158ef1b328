#ifndef SUMNET_GF_HPP
#define SUMNET_GF_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumnet {

// Arithmetic in GF(p) for a small prime p. Values are kept in [0, p).
struct Gf {
    uint32_t p;

    explicit Gf(uint32_t prime) : p(prime) {
        if (prime < 2) throw std::invalid_argument("Gf: prime must be >= 2");
    }

    uint32_t add(uint32_t a, uint32_t b) const { return (a + b) % p; }
    uint32_t sub(uint32_t a, uint32_t b) const { return (a + p - b % p) % p; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>((uint64_t(a) * b) % p);
    }
    uint32_t neg(uint32_t a) const { return (p - a % p) % p; }

    uint32_t pow(uint32_t a, uint64_t e) const {
        uint64_t r = 1, base = a % p;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return static_cast<uint32_t>(r);
    }

    // Fermat inverse; p is prime.
    uint32_t inv(uint32_t a) const {
        if (a % p == 0) throw std::domain_error("Gf: inverse of zero");
        return pow(a, p - 2);
    }
};

bool is_prime(uint32_t n);
uint32_t next_prime(uint32_t n);  // smallest prime > n

// A vector of GF(p)^3. The message dimension k may be smaller than 3 for
// degenerate networks; the unused coordinates stay zero.
struct Vec3 {
    uint32_t p = 0;
    std::array<uint32_t, 3> c{0, 0, 0};

    Vec3() = default;
    Vec3(uint32_t prime, uint32_t c1, uint32_t c2, uint32_t c3)
        : p(prime), c{c1 % prime, c2 % prime, c3 % prime} {}

    static Vec3 zero(uint32_t p) { return Vec3(p, 0, 0, 0); }
    // i is 1-based: alpha(p,1) = (1,0,0).
    static Vec3 alpha(uint32_t p, int i);
    // all-ones over the first k coordinates: k=3 gives (1,1,1).
    static Vec3 all_ones(uint32_t p, int k = 3);

    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0; }

    bool operator==(const Vec3& o) const { return p == o.p && c == o.c; }
    bool operator!=(const Vec3& o) const { return !(*this == o); }
    bool operator<(const Vec3& o) const { return c < o.c; }

    Vec3 operator+(const Vec3& o) const;
    Vec3 operator-(const Vec3& o) const;
    Vec3 scaled(uint32_t s) const;

    // Scales so the first nonzero coordinate is 1. Zero stays zero.
    Vec3 normalized() const;

    std::string str() const;
};

// Span membership over GF(p). Returns coefficients for the given generator
// list when v is in the span (free variables pinned to zero, so the answer
// is deterministic).
std::optional<std::vector<uint32_t>> in_span(const Vec3& v, const std::vector<Vec3>& gens);

// Rank of the generator list (0..3).
int span_rank(const std::vector<Vec3>& gens);

// All distinct normalized nonzero members of the span, sorted.
std::vector<Vec3> span_members_normalized(const std::vector<Vec3>& gens, uint32_t p);

// The coordinate plane <alpha_i1, alpha_i2>, 1-based indices.
bool in_coordinate_plane(const Vec3& v, int i1, int i2);

// Canonical nonzero vector of span{u1,u2} and the plane <alpha_i1,alpha_i2>.
// Requires the intersection to be exactly one-dimensional.
Vec3 plane_intersection(const Vec3& u1, const Vec3& u2, int i1, int i2);

bool linearly_independent(const Vec3& a, const Vec3& b);
bool linearly_independent(const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace sumnet

#endif
