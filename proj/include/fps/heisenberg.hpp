#pragma once

/**
 * @file heisenberg.hpp
 * @brief Unitary representations of the finite Heisenberg group H_N.
 *
 * Generators in the computational basis, with omega = exp(2 pi i / N):
 *
 *   Z|j> = omega^j |j>        X|j> = |j+1 mod N>        Z X = omega X Z
 *
 * The quantum Fourier operator Omega_{ij} = omega^{-ij}/sqrt(N) intertwines
 * them: Omega^dag X Omega = Z. Monomials tau^g X^m Z^n (tau = omega^{1/2})
 * form an exact algebra over Z_{2N} phases, used to track the half-phases the
 * SL(2,Z_N)-induced automorphisms pick up in even dimension.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "zn.hpp"

namespace fps {

inline cmat rep_z(i64 n) {
    cmat z = cmat::Zero(n, n);
    for (i64 j = 0; j < n; ++j) z(j, j) = omega_pow(n, j);
    return z;
}

inline cmat rep_x(i64 n) {
    cmat x = cmat::Zero(n, n);
    for (i64 j = 0; j < n; ++j) x(mod_reduce(j + 1, n), j) = 1.0;
    return x;
}

// <k| X^m Z^n |j> = delta_{k, j+m} omega^{jn}.
inline cmat rep_monomial(i64 m, i64 n, i64 dim) {
    cmat out = cmat::Zero(dim, dim);
    m = mod_reduce(m, dim);
    for (i64 j = 0; j < dim; ++j) out(mod_reduce(j + m, dim), j) = omega_pow(dim, j * n);
    return out;
}

// Omega_{ij} = omega^{-ij} / sqrt(N) (negative exponent; the inverse carries
// the positive one).
inline cmat qft(i64 n) {
    cmat f(n, n);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (i64 i = 0; i < n; ++i)
        for (i64 j = 0; j < n; ++j) f(i, j) = s * omega_pow(n, -i * j);
    return f;
}

// The m tensor factors of Omega|j> when N = d^m: factor i (leftmost first,
// carrying the most significant digit) is (1/sqrt d) sum_r omega^{-j d^{m-1-i} r} |r>.
inline std::vector<cvec> qft_product_state(i64 j, i64 d, i64 m) {
    require(d >= 2 && m >= 1, errc::out_of_range, "need d >= 2, m >= 1");
    i64 n = 1;
    for (i64 i = 0; i < m; ++i) n *= d;
    require(j >= 0 && j < n, errc::out_of_range, "j outside [0, d^m)");
    std::vector<cvec> factors;
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    i64 weight = n / d; // d^{m-1}
    for (i64 i = 0; i < m; ++i) {
        cvec f(d);
        for (i64 r = 0; r < d; ++r) f(r) = s * omega_pow(n, -j * weight * r);
        factors.push_back(f);
        weight /= d;
    }
    return factors;
}

// Hermitian generators: Z = exp(i gen_z), X = exp(i gen_x), principal branch.
inline cmat gen_z(i64 n) {
    cmat g = cmat::Zero(n, n);
    for (i64 j = 0; j < n; ++j) g(j, j) = 2.0 * pi * static_cast<double>(j) / static_cast<double>(n);
    return g;
}

inline cmat gen_x(i64 n) {
    const cmat f = qft(n);
    return f * gen_z(n) * f.adjoint();
}

// Circulant closed form of gen_x, kept as an independent cross-check of the
// conjugation: diagonal pi(N-1)/N, off-diagonal (2 pi / N) / (omega^{j-i} - 1).
inline cmat gen_x_closed_form(i64 n) {
    cmat g(n, n);
    for (i64 i = 0; i < n; ++i)
        for (i64 j = 0; j < n; ++j)
            g(i, j) = (i == j) ? cplx(pi * static_cast<double>(n - 1) / static_cast<double>(n), 0)
                               : (2.0 * pi / static_cast<double>(n)) / (omega_pow(n, j - i) - 1.0);
    return g;
}

// ---------------------------------------------------------------------------
// Exact monomial algebra

// tau^{phase} X^m Z^n with phase in Z_{2N}. Multiplication uses
// Z^n X^m' = omega^{n m'} X^m' Z^n, i.e. phase picks up 2 n m'.
struct Monomial {
    i64 N;
    i64 phase; // exponent of tau, reduced mod 2N
    i64 m, n;  // exponents of X and Z, reduced mod N

    Monomial(i64 dim, i64 tau_exp, i64 xm, i64 zn)
        : N(dim), phase(mod_reduce(tau_exp, 2 * dim)), m(mod_reduce(xm, dim)), n(mod_reduce(zn, dim)) {}

    static Monomial identity(i64 dim) { return Monomial(dim, 0, 0, 0); }

    Monomial operator*(const Monomial& o) const {
        require(N == o.N, errc::dimension_mismatch, "mixed dimensions");
        return Monomial(N, phase + o.phase + 2 * n * o.m, m + o.m, n + o.n);
    }

    // (tau^g X^m Z^n)^k = tau^{kg} omega^{mn k(k-1)/2} X^{km} Z^{kn}.
    Monomial pow(i64 k) const {
        k = mod_reduce(k, 2 * N);
        return Monomial(N, k * phase + m * n * k * (k - 1), k * m, k * n);
    }

    cmat matrix() const { return tau_pow(N, phase) * rep_monomial(m, n, N); }

    std::string str() const {
        std::string s;
        if (phase != 0) s += "tau^" + std::to_string(phase) + " ";
        s += "X^" + std::to_string(m) + " Z^" + std::to_string(n);
        return s;
    }
};

enum class Gen { X, Z };

// Image of a generator under the automorphism induced by M in SL(2,Z_N):
// X -> X^a Z^b and Z -> X^c Z^d, with the half-phase tau^{sgn(ab)} (resp.
// tau^{sgn(cd)}) in even dimension so the image still has order N.
inline Monomial sigma_image(const Sl2& m, Gen which) {
    const i64 u = (which == Gen::X) ? m.a : m.c;
    const i64 v = (which == Gen::X) ? m.b : m.d;
    const i64 tau_exp = (m.N % 2 == 0) ? sgn_parity(u * v) : 0;
    return Monomial(m.N, tau_exp, u, v);
}

inline cmat sigma_matrix(const Sl2& m, Gen which) { return sigma_image(m, which).matrix(); }

// ---------------------------------------------------------------------------
// Ordered eigenbasis

// Eigenvectors of a unitary whose spectrum is {g omega^j : j = 0..N-1}, each
// eigenvalue once, with g a global tau-power (1 for odd N, possibly tau for
// even N). Column j satisfies U alpha_j = g omega^j alpha_j. Each vector's
// overall phase is fixed by making its largest-magnitude entry real positive
// (ties: lowest index).
struct OrderedEigenbasis {
    i64 N = 0;
    cmat vectors;      // column j = alpha_j
    cplx global_phase; // g
    cmat target;       // the unitary that was diagonalized

    cvec col(i64 j) const { return vectors.col(mod_reduce(j, N)); }

    // Born probability <alpha_j| rho |alpha_j>.
    double born(const cmat& rho, i64 j) const {
        const cvec v = col(j);
        return (v.adjoint() * rho * v)(0, 0).real();
    }
};

inline OrderedEigenbasis ordered_eigenbasis(const cmat& u, double tol = 1e-8) {
    const i64 n = u.rows();
    require(u.rows() == u.cols(), errc::dimension_mismatch, "matrix not square");
    require(is_unitary(u, 1e-8), errc::degenerate_spectrum, "matrix is not unitary");
    Eigen::ComplexEigenSolver<cmat> es(u);
    require(es.info() == Eigen::Success, errc::degenerate_spectrum, "eigendecomposition failed");
    const cvec vals = es.eigenvalues();

    // Try global phases 1 and tau: eigenvalue arguments must sit on the
    // omega^j grid, with every label hit exactly once.
    OrderedEigenbasis basis;
    basis.N = n;
    basis.vectors = cmat::Zero(n, n);
    basis.target = u;
    for (int attempt = 0; attempt < 2; ++attempt) {
        const cplx g = (attempt == 0) ? cplx(1, 0) : tau_pow(n, 1);
        std::vector<bool> used(static_cast<size_t>(n), false);
        std::vector<i64> label(static_cast<size_t>(n), -1);
        bool ok = true;
        for (i64 k = 0; k < n && ok; ++k) {
            const cplx lam = vals(k) / g;
            double ang = std::arg(lam) / (2.0 * pi) * static_cast<double>(n);
            i64 j = mod_reduce(static_cast<i64>(std::llround(ang)), n);
            if (std::abs(vals(k) - g * omega_pow(n, j)) > tol || used[static_cast<size_t>(j)]) { ok = false; break; }
            used[static_cast<size_t>(j)] = true;
            label[static_cast<size_t>(k)] = j;
        }
        if (!ok) continue;
        basis.global_phase = g;
        for (i64 k = 0; k < n; ++k) {
            cvec v = es.eigenvectors().col(k).normalized();
            // phase convention: largest entry real positive, ties by index
            i64 imax = 0;
            double best = -1.0;
            for (i64 i = 0; i < n; ++i) {
                double a = std::abs(v(i));
                if (a > best + 1e-12) { best = a; imax = i; }
            }
            cplx p = v(imax);
            v *= std::conj(p) / std::abs(p);
            basis.vectors.col(label[static_cast<size_t>(k)]) = v;
        }
        return basis;
    }
    raise(errc::degenerate_spectrum, "spectrum is not {g omega^j, each once} within tolerance");
}

} // namespace fps
