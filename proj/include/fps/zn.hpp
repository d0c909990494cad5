#pragma once

/**
 * @file zn.hpp
 * @brief Exact arithmetic over Z_N, SL(2,Z_N), phase-space lines and line covers.
 *
 * Everything here is integer-exact. The canonical representative of a residue
 * class is always {0,...,N-1}; negative intermediates never escape a function.
 * Lines in Z_N x Z_N come in two flavours:
 *
 *   - LineSpec:       S_ab + offset, the solution set of a*x + b*z = 0 translated,
 *                     used for direct Radon sums over the distribution grid.
 *   - FrequencyLine:  {(c*t, -a*t) : t in Z_N}, the support of one Radon
 *                     transform in the Fourier dual of Z_N x Z_N.
 *
 * Both are honest N-point sets exactly when gcd of the direction with N is 1.
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace fps {

using i64 = std::int64_t;

// Canonical representative in {0,...,n-1}; works for negative u.
constexpr i64 mod_reduce(i64 u, i64 n) {
    i64 r = u % n;
    return r < 0 ? r + n : r;
}

constexpr bool is_power_of_two(i64 n) { return n > 0 && (n & (n - 1)) == 0; }

// 2-adic valuation of u > 0.
constexpr int val2(i64 u) {
    int v = 0;
    while (u % 2 == 0) { u /= 2; ++v; }
    return v;
}

// Extended Euclid: returns g = gcd(a,b) and x,y with a*x + b*y = g.
struct xgcd_result { i64 g, x, y; };

constexpr xgcd_result xgcd(i64 a, i64 b) {
    if (b == 0) return {a, 1, 0};
    i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        i64 q = a / b;
        a -= q * b; std::swap(a, b);
        x0 -= q * x1; std::swap(x0, x1);
        y0 -= q * y1; std::swap(y0, y1);
    }
    return {a, x0, y0};
}

constexpr i64 gcd3(i64 a, i64 b, i64 n) { return std::gcd(std::gcd(a, b), n); }

// Multiplicative inverse of u mod n. Requires gcd(u,n) = 1.
inline i64 mod_inverse(i64 u, i64 n) {
    require(n >= 1, errc::out_of_range, "modulus must be positive");
    u = mod_reduce(u, n);
    auto [g, x, y] = xgcd(u, n);
    (void)y;
    if (g != 1)
        raise(errc::not_invertible,
              "gcd(" + std::to_string(u) + "," + std::to_string(n) + ") = " + std::to_string(g));
    return mod_reduce(x, n);
}

// sgn(u) = 0 for even u, 1 for odd u (the half-phase selector for even N).
constexpr int sgn_parity(i64 u) { return static_cast<int>(mod_reduce(u, 2)); }

// The unique v with 2v = u mod n, i.e. u*(n+1)/2. Only defined for odd n.
inline i64 half_mod(i64 u, i64 n) {
    if (n % 2 == 0) raise(errc::even_modulus, "half_mod needs an odd modulus, got " + std::to_string(n));
    return mod_reduce(mod_reduce(u, n) * ((n + 1) / 2), n);
}

struct point { i64 x, z; bool operator==(const point&) const = default; auto operator<=>(const point&) const = default; };

// ---------------------------------------------------------------------------
// SL(2,Z_N)

struct Sl2 {
    i64 a, b, c, d;
    i64 N;

    Sl2(i64 a_, i64 b_, i64 c_, i64 d_, i64 n) : a(mod_reduce(a_, n)), b(mod_reduce(b_, n)), c(mod_reduce(c_, n)), d(mod_reduce(d_, n)), N(n) {
        require(n >= 1, errc::out_of_range, "modulus must be positive");
        if (det() != mod_reduce(1, n))
            raise(errc::not_sl2, "determinant " + std::to_string(det()) + " != 1 mod " + std::to_string(n));
    }

    static std::optional<Sl2> maybe(i64 a, i64 b, i64 c, i64 d, i64 n) {
        if (mod_reduce(mod_reduce(a, n) * mod_reduce(d, n) - mod_reduce(b, n) * mod_reduce(c, n), n) != mod_reduce(1, n))
            return std::nullopt;
        return Sl2(a, b, c, d, n);
    }

    static Sl2 identity(i64 n) { return Sl2(1, 0, 0, 1, n); }

    i64 det() const { return mod_reduce(a * d - b * c, N); }

    Sl2 operator*(const Sl2& o) const {
        require(N == o.N, errc::dimension_mismatch, "mixed moduli");
        return Sl2(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d, N);
    }

    // (a b; c d)^{-1} = (d -b; -c a) since det = 1.
    Sl2 inverse() const { return Sl2(d, -b, -c, a, N); }

    Sl2 transpose() const { return Sl2(a, c, b, d, N); }

    bool operator==(const Sl2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d && N == o.N; }

    // Action on a point: M*(x,z)^T.
    point apply(point p) const { return {mod_reduce(a * p.x + b * p.z, N), mod_reduce(c * p.x + d * p.z, N)}; }

    std::string str() const {
        return "[" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(c) + "," + std::to_string(d) + "] mod " + std::to_string(N);
    }
};

// Membership test for the L1 subset of SL(2,Z_{2^k}): each row contains an
// entry equal to 1, and a diagonal entry different from 1 must be even.
inline bool l1_check(const Sl2& m) {
    if (!is_power_of_two(m.N)) raise(errc::not_power_of_two, "L1 is defined for N = 2^k, got N = " + std::to_string(m.N));
    auto row_ok = [](i64 diag, i64 off) {
        if (diag != 1 && diag % 2 != 0) return false;
        return diag == 1 || off == 1;
    };
    return row_ok(m.a, m.b) && row_ok(m.d, m.c);
}

// Exhaustive enumeration; |SL(2,Z_N)| = N^3 prod_{p|N}(1-1/p^2), fine at desk scale.
inline std::vector<Sl2> all_sl2(i64 n) {
    std::vector<Sl2> out;
    for (i64 a = 0; a < n; ++a)
        for (i64 b = 0; b < n; ++b)
            for (i64 c = 0; c < n; ++c)
                for (i64 d = 0; d < n; ++d)
                    if (mod_reduce(a * d - b * c, n) == mod_reduce(1, n))
                        out.emplace_back(a, b, c, d, n);
    return out;
}

// ---------------------------------------------------------------------------
// Lines in the distribution grid

struct LineSpec {
    i64 a, b;      // direction: solutions of a*x + b*z = 0
    i64 x0, z0;    // offset
    i64 N;
};

// All N points of S_ab + offset, each exactly once, deterministically ordered
// by the ascending free parameter (x when b is invertible, z when a is,
// generator parameter t -> (b*t, -a*t) otherwise).
inline std::vector<point> line_points(const LineSpec& line) {
    const i64 n = line.N;
    if (gcd3(line.a, line.b, n) != 1)
        raise(errc::degenerate_direction, "gcd(a,b,N) != 1 for direction (" + std::to_string(line.a) + "," + std::to_string(line.b) + ")");
    std::vector<point> pts;
    pts.reserve(static_cast<size_t>(n));
    if (std::gcd(mod_reduce(line.b, n), n) == 1) {
        const i64 slope = mod_reduce(-line.a * mod_inverse(line.b, n), n);
        for (i64 x = 0; x < n; ++x) pts.push_back({mod_reduce(x + line.x0, n), mod_reduce(slope * x + line.z0, n)});
    } else if (std::gcd(mod_reduce(line.a, n), n) == 1) {
        const i64 slope = mod_reduce(-line.b * mod_inverse(line.a, n), n);
        for (i64 z = 0; z < n; ++z) pts.push_back({mod_reduce(slope * z + line.x0, n), mod_reduce(z + line.z0, n)});
    } else {
        for (i64 t = 0; t < n; ++t) pts.push_back({mod_reduce(line.b * t + line.x0, n), mod_reduce(-line.a * t + line.z0, n)});
    }
    return pts;
}

// ---------------------------------------------------------------------------
// Frequency lines

struct FrequencyLine {
    i64 a, c;
    i64 N;

    bool operator==(const FrequencyLine& o) const { return canonical() == o.canonical(); }

    // (a,c) and (-a,-c) carry the same point set; pick the lexicographically
    // smaller label so lines compare as sets.
    std::array<i64, 2> canonical() const {
        std::array<i64, 2> p{mod_reduce(a, N), mod_reduce(c, N)};
        std::array<i64, 2> q{mod_reduce(-a, N), mod_reduce(-c, N)};
        return std::min(p, q);
    }

    std::string str() const { return "(a=" + std::to_string(a) + ",c=" + std::to_string(c) + ")"; }
};

// The t-th point is (c*t, -a*t); these are exactly the solutions of
// a*nu1 + c*nu2 = 0 in the dual grid, each once, when gcd(a,c,N) = 1.
inline std::vector<point> frequency_line_points(const FrequencyLine& fl) {
    const i64 n = fl.N;
    if (gcd3(fl.a, fl.c, n) != 1)
        raise(errc::degenerate_direction, "gcd(a,c,N) != 1 for frequency line " + fl.str());
    std::vector<point> pts;
    pts.reserve(static_cast<size_t>(n));
    for (i64 t = 0; t < n; ++t) pts.push_back({mod_reduce(fl.c * t, n), mod_reduce(-fl.a * t, n)});
    return pts;
}

// Completes a frequency line (a,c) to M in SL(2,Z_N) with first column (a,c):
// with p*a + q*c = g = gcd(a,c) and g invertible mod N, take d = p/g, b = -q/g.
inline Sl2 sl2_with_first_column(const FrequencyLine& fl) {
    const i64 n = fl.N;
    if (gcd3(fl.a, fl.c, n) != 1) raise(errc::degenerate_direction, "gcd(a,c,N) != 1 for " + fl.str());
    const i64 a = mod_reduce(fl.a, n), c = mod_reduce(fl.c, n);
    auto [g, p, q] = xgcd(a, c);
    if (g == 0) { // a = c = 0 only possible when N = 1
        return Sl2::identity(n);
    }
    const i64 ginv = mod_inverse(g, n);
    const i64 d = mod_reduce(p * ginv, n);
    const i64 b = mod_reduce(-q * ginv, n);
    return Sl2(a, b, c, d, n);
}

namespace detail {

inline std::vector<point> all_points(i64 n) {
    std::vector<point> pts;
    for (i64 x = 0; x < n; ++x)
        for (i64 z = 0; z < n; ++z) pts.push_back({x, z});
    return pts;
}

// Greedy set cover over gcd-valid directions, deterministic: scan candidates
// in lexicographic order, pick the first line covering the most new points.
inline std::vector<FrequencyLine> greedy_cover(i64 n) {
    std::vector<FrequencyLine> candidates;
    for (i64 a = 0; a < n; ++a)
        for (i64 c = 0; c < n; ++c)
            if (gcd3(a, c, n) == 1) {
                FrequencyLine fl{a, c, n};
                if (fl.canonical() == std::array<i64, 2>{a, c}) candidates.push_back(fl);
            }
    std::set<point> uncovered;
    for (auto p : all_points(n)) uncovered.insert(p);
    std::vector<FrequencyLine> cover;
    while (!uncovered.empty()) {
        size_t best = candidates.size();
        size_t best_gain = 0;
        for (size_t i = 0; i < candidates.size(); ++i) {
            size_t gain = 0;
            for (auto p : frequency_line_points(candidates[i]))
                if (uncovered.count(p)) ++gain;
            if (gain > best_gain) { best_gain = gain; best = i; }
        }
        if (best == candidates.size())
            raise(errc::incomplete_cover, "no candidate line covers remaining points");
        for (auto p : frequency_line_points(candidates[best])) uncovered.erase(p);
        cover.push_back(candidates[best]);
    }
    return cover;
}

} // namespace detail

// A deterministic, duplicate-free list of frequency lines whose union covers
// Z_N x Z_N. For N = 2^k the fixed family {(1,c)} u {(a,1): a even} is used:
// (1,c) covers the points with val2(z) <= val2(x) and (a,1) the rest, and each
// line admits an SL(2) completion compatible with the 2^k marginal formulas.
// Odd N uses a verified greedy cover (any gcd-valid direction works there).
inline std::vector<FrequencyLine> cover_lines(i64 n) {
    require(n >= 1, errc::out_of_range, "dimension must be positive");
    if (n % 2 == 1) return detail::greedy_cover(n);
    if (!is_power_of_two(n))
        raise(errc::unsupported_dimension, "line covers exist for odd N and N = 2^k, got N = " + std::to_string(n));
    std::vector<FrequencyLine> cover;
    for (i64 c = 0; c < n; ++c) cover.push_back({1, c, n});
    for (i64 a = 0; a < n; a += 2) cover.push_back({a, 1, n});
    return cover;
}

} // namespace fps
