#pragma once

/**
 * @file radon.hpp
 * @brief Finite Radon transforms of distribution grids and their closed forms.
 *
 * The transform of a grid W with respect to M = (a b; c d) in SL(2,Z_N) is
 *
 *   radon(W, M)[z] = sum_x W(M (x,z)^T)
 *
 * which depends on M only through its first column (a,c) (and det = 1): the
 * summed operator is
 *
 *   sum_x a(M xi) = N sum_t f(ct, -at) X^{ct} Z^{-at} omega^{tz},
 *
 * supported on the frequency line {(ct,-at)}. radon_direct evaluates the grid
 * sum literally and serves as the convention-free oracle for every closed
 * form below.
 *
 * Closed forms (calibrated against radon_direct and frozen by tests):
 *
 *  - odd N: radon(W, M)[z] = <beta_j| rho |beta_j>, j = z + a c (N+1)/2, with
 *    beta the ordered eigenbasis of the image of X^{-c} Z^{a}.
 *  - even N (nu family): a double sum over the diagonal of rho in the ordered
 *    eigenbasis of tau^{sgn(c'd')} X^{c'} Z^{d'}, (c',d') = (-c, a) the second
 *    row of M^{-1}; see marginal_even_general.
 *  - N = 2^k (w1 family): for M in L1 the transform for M^{-1}, i.e.
 *    sum_{x'} W1(M^{-1} (x',z')^T), is the Born distribution of the ordered
 *    eigenbasis of tau^{sgn(cd)} X^c Z^d with the index shifts (c - sgn c)/2
 *    (d = 1) resp. d/2 (c = 1, d even). marginal_qubit_w1 returns that
 *    distribution; its oracle identity is against radon_direct(W, M^{-1}).
 */

#include <string>
#include <vector>

#include "heisenberg.hpp"
#include "matrix.hpp"
#include "phasepoint.hpp"
#include "random.hpp"
#include "zn.hpp"

namespace fps {

struct MarginalRecord {
    Sl2 M;
    rvec probs;
    std::string basis_tag;  // exact operator whose ordered eigenbasis was measured
    FrequencyLine line;     // frequency support of this marginal
};

struct RadonDataset {
    i64 N = 0;
    Variant variant = Variant::odd;
    std::vector<MarginalRecord> records;

    void add(MarginalRecord rec) {
        require(rec.M.N == N, errc::dimension_mismatch, "record dimension mismatch");
        for (const auto& r : records)
            require(!(r.M == rec.M), errc::invariant_violation, "duplicate matrix in dataset: " + rec.M.str());
        records.push_back(std::move(rec));
    }
};

// The frequency line determined by a marginal for M under each variant's
// convention: first column of M for the direct (odd / even-nu) forms, first
// column of M^{-1} for the w1 form (whose closed marginal is the M^{-1}
// transform).
inline FrequencyLine marginal_line(Variant v, const Sl2& m) {
    if (v == Variant::qubit_w1) {
        const Sl2 k = m.inverse();
        return {k.a, k.c, m.N};
    }
    return {m.a, m.c, m.N};
}

// sum_x W(M (x,z)^T) for each z. The convention-free oracle.
inline rvec radon_direct(const WignerGrid& grid, const Sl2& m) {
    require(grid.N == m.N, errc::dimension_mismatch, "grid/matrix dimension mismatch");
    const i64 n = grid.N;
    rvec out = rvec::Zero(n);
    for (i64 z = 0; z < n; ++z)
        for (i64 x = 0; x < n; ++x) {
            const point p = m.apply({x, z});
            out(z) += grid.values(p.x, p.z);
        }
    return out;
}

namespace detail {

// Rank-1 projector family behind sum_x a(M xi) for the odd set: the operator
// diagonalized is X^{-c} Z^{a} and the marginal at z reads off index
// z + a c (N+1)/2.
inline OrderedEigenbasis odd_marginal_basis(const Sl2& m) {
    const Monomial u(m.N, 0, -m.c, m.a);
    return ordered_eigenbasis(u.matrix());
}

inline i64 odd_marginal_index(const Sl2& m, i64 z) {
    return mod_reduce(z + m.a * m.c * ((m.N + 1) / 2), m.N);
}

} // namespace detail

// Born-probability form of the odd-N transform; equals radon_direct entrywise.
inline MarginalRecord marginal_simple_odd(const cmat& rho, const Sl2& m, const PhasePointSet& set) {
    require(set.variant() == Variant::odd, errc::variant_dimension_mismatch, "needs an odd set");
    if (m.N % 2 == 0) raise(errc::even_dimension, "odd-dimension marginal with even N");
    require(rho.rows() == m.N && rho.cols() == m.N && set.N == m.N, errc::dimension_mismatch, "dimension mismatch");
    const i64 n = m.N;
    const auto basis = detail::odd_marginal_basis(m);
    rvec probs(n);
    for (i64 z = 0; z < n; ++z) probs(z) = basis.born(rho, detail::odd_marginal_index(m, z));
    return {m, std::move(probs),
            "X^" + std::to_string(mod_reduce(-m.c, n)) + " Z^" + std::to_string(m.a), marginal_line(Variant::odd, m)};
}

// Even-N transform from the diagonal of rho in one eigenbasis:
//
//   radon(W,M)[z] = (1/N) sum_j rho~_jj sum_n nu_{c'n, d'n}
//                   (-1)^{d'n floor(c'n/N) + c'n floor(d'n/N)}
//                   omega^{((c'd' - sgn(c'd'))/2 + j - z) n}
//
// with (c',d') = (-c, a), rho~ diagonal in the ordered eigenbasis of
// sigma_{M^{-1}}(Z) = tau^{sgn(c'd')} X^{c'} Z^{d'}, nu indices reduced mod N
// and the floor products taken over the integer representatives. Requires
// N/u even for u = gcd(t,N), t = c' if c' is even else d'; outside that
// precondition no closed form exists and callers should fall back to
// radon_direct.
inline rvec marginal_even_general(const cmat& rho, const Sl2& m, const PhasePointSet& set) {
    require(set.variant() == Variant::even_nu || set.variant() == Variant::qubit_w1,
            errc::variant_dimension_mismatch, "needs an even-dimension set");
    const i64 n = m.N;
    require(n % 2 == 0, errc::even_dimension, "even-dimension marginal with odd N");
    require(rho.rows() == n && rho.cols() == n && set.N == n, errc::dimension_mismatch, "dimension mismatch");

    const i64 cp = mod_reduce(-m.c, n);
    const i64 dp = mod_reduce(m.a, n);
    const i64 t = (cp % 2 == 0) ? cp : dp;
    const i64 u = std::gcd(t == 0 ? n : t, n);
    require((n / u) % 2 == 0, errc::precondition_nu,
            "N/u = " + std::to_string(n / u) + " is odd; no closed form for this matrix");

    const Monomial vop(n, sgn_parity(cp * dp), cp, dp);
    const auto basis = ordered_eigenbasis(vop.matrix());
    rvec diag(n);
    for (i64 j = 0; j < n; ++j) diag(j) = basis.born(rho, j);

    const i64 shift2 = cp * dp - sgn_parity(cp * dp); // even by construction
    rvec probs = rvec::Zero(n);
    for (i64 z = 0; z < n; ++z) {
        cplx acc = 0;
        for (i64 j = 0; j < n; ++j) {
            cplx inner = 0;
            for (i64 k = 0; k < n; ++k) {
                const i64 fc = (dp * k) * ((cp * k) / n) + (cp * k) * ((dp * k) / n);
                const double sign = (fc % 2 == 0) ? 1.0 : -1.0;
                inner += set.ordering.nu(cp * k, dp * k) * sign * omega_pow(n, (shift2 / 2 + j - z) * k);
            }
            acc += diag(j) * inner;
        }
        probs(z) = acc.real() / static_cast<double>(n);
    }
    return probs;
}

// 2^k simple marginal for M in L1 (each row of M contains a 1; non-unit
// diagonal entries even). Returns the Born probabilities of the ordered
// eigenbasis of sigma_M(Z) = tau^{sgn(cd)} X^c Z^d shifted per the two L1
// cases; this equals the transform of the w1 grid for M^{-1}, i.e.
// radon_direct(wigner(rho, set), M.inverse()).
inline MarginalRecord marginal_qubit_w1(const cmat& rho, const Sl2& m, const PhasePointSet& set) {
    require(set.variant() == Variant::qubit_w1, errc::variant_dimension_mismatch, "needs a w1 set");
    const i64 n = m.N;
    require(rho.rows() == n && rho.cols() == n && set.N == n, errc::dimension_mismatch, "dimension mismatch");
    if (!l1_check(m)) raise(errc::not_in_l1, "matrix " + m.str() + " is not in L1");

    // Index shifts calibrated once against radon_direct over exhaustive L1
    // sweeps and frozen: (c - sgn(c))/2 for d = 1 (the +sgn variant fails for
    // every odd c), d/2 for c = 1 with d even.
    i64 shift = 0;
    if (m.d == 1) {
        shift = (m.c - sgn_parity(m.c)) / 2;
    } else if (m.c == 1 && m.d % 2 == 0) {
        shift = m.d / 2;
    } else {
        // L1 membership leaves only those two shapes for the second row
        raise(errc::not_in_l1, "second row of " + m.str() + " fits neither L1 marginal case");
    }

    const Monomial vop(n, sgn_parity(m.c * m.d), m.c, m.d);
    const auto basis = ordered_eigenbasis(vop.matrix());
    rvec probs(n);
    for (i64 z = 0; z < n; ++z) probs(z) = basis.born(rho, mod_reduce(z - shift, n));
    return {m, std::move(probs), vop.str() + " (sigma_M(Z))", marginal_line(Variant::qubit_w1, m)};
}

// Seeded multinomial sample; deterministic in (probs, shots, seed).
inline Eigen::VectorXi simulate_counts(const rvec& probs, i64 shots, std::uint64_t seed) {
    const i64 n = probs.size();
    require(shots > 0, errc::invalid_distribution, "shots must be positive");
    double total = 0;
    for (i64 i = 0; i < n; ++i) {
        require(probs(i) > -1e-9, errc::invalid_distribution, "negative probability at bin " + std::to_string(i));
        total += std::max(0.0, probs(i));
    }
    require(std::abs(total - 1.0) < 1e-6, errc::invalid_distribution,
            "probabilities sum to " + std::to_string(total));

    rvec cdf(n);
    double acc = 0;
    for (i64 i = 0; i < n; ++i) { acc += std::max(0.0, probs(i)) / total; cdf(i) = acc; }
    cdf(n - 1) = 1.0;

    Rng rng(seed);
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(n);
    for (i64 s = 0; s < shots; ++s) {
        const double coin = rng.uniform();
        i64 lo = 0, hi = n - 1;
        while (lo < hi) {
            const i64 mid = (lo + hi) / 2;
            if (coin < cdf(mid)) hi = mid; else lo = mid + 1;
        }
        counts(lo) += 1;
    }
    return counts;
}

} // namespace fps
