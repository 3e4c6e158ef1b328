#include "sumnet/gf.hpp"

#include <algorithm>
#include <set>

namespace sumnet {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; uint64_t(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint32_t next_prime(uint32_t n) {
    uint32_t m = n + 1;
    while (!is_prime(m)) ++m;
    return m;
}

Vec3 Vec3::alpha(uint32_t p, int i) {
    if (i < 1 || i > 3) throw std::invalid_argument("alpha: index out of range");
    Vec3 v = zero(p);
    v.c[i - 1] = 1 % p;
    return v;
}

Vec3 Vec3::all_ones(uint32_t p, int k) {
    if (k < 1 || k > 3) throw std::invalid_argument("all_ones: k out of range");
    Vec3 v = zero(p);
    for (int i = 0; i < k; ++i) v.c[i] = 1 % p;
    return v;
}

static void require_same_prime(const Vec3& a, const Vec3& b) {
    if (a.p != b.p) throw std::invalid_argument("Vec3: mixed primes");
}

Vec3 Vec3::operator+(const Vec3& o) const {
    require_same_prime(*this, o);
    Gf f(p);
    return Vec3(p, f.add(c[0], o.c[0]), f.add(c[1], o.c[1]), f.add(c[2], o.c[2]));
}

Vec3 Vec3::operator-(const Vec3& o) const {
    require_same_prime(*this, o);
    Gf f(p);
    return Vec3(p, f.sub(c[0], o.c[0]), f.sub(c[1], o.c[1]), f.sub(c[2], o.c[2]));
}

Vec3 Vec3::scaled(uint32_t s) const {
    Gf f(p);
    return Vec3(p, f.mul(c[0], s), f.mul(c[1], s), f.mul(c[2], s));
}

Vec3 Vec3::normalized() const {
    for (uint32_t x : c) {
        if (x != 0) return scaled(Gf(p).inv(x));
    }
    return *this;
}

std::string Vec3::str() const {
    return "(" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," +
           std::to_string(c[2]) + ")";
}

// Row reduction of the 3 x (m+1) system [gens | v].
std::optional<std::vector<uint32_t>> in_span(const Vec3& v, const std::vector<Vec3>& gens) {
    const uint32_t p = v.p;
    Gf f(p);
    const size_t m = gens.size();
    for (const auto& g : gens) require_same_prime(v, g);

    // rows[r][j] for j < m are generator coordinates, column m is v.
    std::array<std::vector<uint32_t>, 3> rows;
    for (int r = 0; r < 3; ++r) {
        rows[r].resize(m + 1);
        for (size_t j = 0; j < m; ++j) rows[r][j] = gens[j].c[r];
        rows[r][m] = v.c[r];
    }

    std::vector<int> pivot_row_of_col(m, -1);
    int rank = 0;
    for (size_t col = 0; col < m && rank < 3; ++col) {
        int sel = -1;
        for (int r = rank; r < 3; ++r)
            if (rows[r][col] != 0) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(rows[sel], rows[rank]);
        uint32_t iv = f.inv(rows[rank][col]);
        for (size_t j = col; j <= m; ++j) rows[rank][j] = f.mul(rows[rank][j], iv);
        for (int r = 0; r < 3; ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            uint32_t factor = rows[r][col];
            for (size_t j = col; j <= m; ++j)
                rows[r][j] = f.sub(rows[r][j], f.mul(factor, rows[rank][j]));
        }
        pivot_row_of_col[col] = rank;
        ++rank;
    }

    // Inconsistent if a zero generator row demands a nonzero value of v.
    for (int r = rank; r < 3; ++r)
        if (rows[r][m] != 0) return std::nullopt;

    std::vector<uint32_t> coeff(m, 0);
    for (size_t col = 0; col < m; ++col)
        if (pivot_row_of_col[col] >= 0) coeff[col] = rows[pivot_row_of_col[col]][m];
    return coeff;
}

int span_rank(const std::vector<Vec3>& gens) {
    if (gens.empty()) return 0;
    const uint32_t p = gens.front().p;
    Gf f(p);
    std::vector<Vec3> basis;
    for (const auto& g : gens) {
        Vec3 v = g;
        for (const auto& b : basis) {
            // eliminate v against b's leading coordinate
            int lead = 0;
            while (lead < 3 && b.c[lead] == 0) ++lead;
            if (lead < 3 && v.c[lead] != 0) {
                uint32_t factor = f.mul(v.c[lead], f.inv(b.c[lead]));
                v = v - b.scaled(factor);
            }
        }
        if (!v.is_zero()) {
            basis.push_back(v.normalized());
            std::sort(basis.begin(), basis.end(),
                      [](const Vec3& a, const Vec3& b2) {
                          auto lead = [](const Vec3& x) {
                              int i = 0;
                              while (i < 3 && x.c[i] == 0) ++i;
                              return i;
                          };
                          return lead(a) < lead(b2);
                      });
        }
        if (basis.size() == 3) break;
    }
    return static_cast<int>(basis.size());
}

std::vector<Vec3> span_members_normalized(const std::vector<Vec3>& gens, uint32_t p) {
    // reduce to an actual basis first
    std::vector<Vec3> basis;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        std::vector<Vec3> trial = basis;
        trial.push_back(g);
        if (span_rank(trial) > span_rank(basis)) basis.push_back(g);
        if (basis.size() == 3) break;
    }
    std::set<Vec3> out;
    const size_t d = basis.size();
    std::vector<uint32_t> coef(d, 0);
    // enumerate all coefficient tuples
    uint64_t total = 1;
    for (size_t i = 0; i < d; ++i) total *= p;
    for (uint64_t idx = 1; idx < total; ++idx) {
        uint64_t t = idx;
        Vec3 v = Vec3::zero(p);
        for (size_t i = 0; i < d; ++i) {
            uint32_t ci = static_cast<uint32_t>(t % p);
            t /= p;
            if (ci) v = v + basis[i].scaled(ci);
        }
        if (!v.is_zero()) out.insert(v.normalized());
    }
    return std::vector<Vec3>(out.begin(), out.end());
}

bool in_coordinate_plane(const Vec3& v, int i1, int i2) {
    for (int i = 1; i <= 3; ++i)
        if (i != i1 && i != i2 && v.c[i - 1] != 0) return false;
    return true;
}

Vec3 plane_intersection(const Vec3& u1, const Vec3& u2, int i1, int i2) {
    require_same_prime(u1, u2);
    const uint32_t p = u1.p;
    if (span_rank({u1, u2}) != 2)
        throw std::domain_error("plane_intersection: span is not two-dimensional");
    // the missing coordinate must vanish: a*u1[m] + b*u2[m] = 0
    int m = -1;
    for (int i = 1; i <= 3; ++i)
        if (i != i1 && i != i2) m = i - 1;
    Gf f(p);
    uint32_t x = u1.c[m], y = u2.c[m];
    Vec3 w = Vec3::zero(p);
    if (x == 0 && y == 0)
        throw std::domain_error("plane_intersection: intersection is not one-dimensional");
    if (x == 0) {
        w = u1;
    } else if (y == 0) {
        w = u2;
    } else {
        // a = y, b = -x kills coordinate m
        w = u1.scaled(y) - u2.scaled(x);
    }
    if (w.is_zero())
        throw std::domain_error("plane_intersection: intersection is not one-dimensional");
    return w.normalized();
}

bool linearly_independent(const Vec3& a, const Vec3& b) {
    return span_rank({a, b}) == 2;
}

bool linearly_independent(const Vec3& a, const Vec3& b, const Vec3& c) {
    return span_rank({a, b, c}) == 3;
}

}  // namespace sumnet
