#pragma once

/**
 * @file phasepoint.hpp
 * @brief Ordering functions, phase-point operator sets, and distribution grids.
 *
 * A distribution function on the N x N phase space is fixed by an ordering
 * function f(m,n) through
 *
 *   a(x,z) = sum_{m,n} f(m,n) X^m Z^n omega^{-(mx+nz)},   W(x,z:rho) = tr(rho a(x,z))
 *
 * with |f| = 1/N^2, f(m,0) = f(0,n) = 1/N^2 and the reality constraint
 * conj(f(N-m,N-n)) omega^{mn} = f(m,n). Three variants are implemented:
 *
 *   odd       f = omega^{mn(N+1)/2} / N^2                       (N odd)
 *   even_nu   f = nu_{mn} tau^{mn} / N^2, tau = omega^{1/2}     (N even)
 *   qubit_w1  f = (+-1) tau^{mn} / N^2 with floor-function
 *             signs that buy simple marginals on L1              (N = 2^k)
 *
 * Operators are built by the definition sum. For odd and default-nu even sets
 * the sparse closed forms are evaluated too and any disagreement is a hard
 * error. Sign conventions resolved for the even closed form (k-l odd, with
 * m = (k-l) mod N and theta = pi (m + 2(l-z)) / N):
 *
 *   a(x,z)_{kl} = omega^{-(k-l)x} (1 - cot(theta) + i csc(theta)) / N^2
 *
 * and for k-l even, nonzero entries carry (1+i)/(2N) on m/2 + l = z and
 * (1-i)/(2N) on m/2 + l = z + N/2 (indices mod N).
 */

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heisenberg.hpp"
#include "matrix.hpp"
#include "zn.hpp"

namespace fps {

enum class Variant { odd, even_nu, qubit_w1 };

inline const char* variant_name(Variant v) {
    switch (v) {
        case Variant::odd:      return "odd";
        case Variant::even_nu:  return "even-nu";
        case Variant::qubit_w1: return "qubit-w1";
    }
    return "?";
}

inline std::optional<Variant> variant_from_name(const std::string& s) {
    if (s == "odd") return Variant::odd;
    if (s == "even-nu") return Variant::even_nu;
    if (s == "qubit-w1") return Variant::qubit_w1;
    return std::nullopt;
}

namespace detail {

// Default nu for the even family: 1 on the axes and when m+n is even,
// i when m+n is odd with both indices nonzero.
inline cplx default_nu(i64 m, i64 n) {
    if (m == 0 || n == 0) return {1, 0};
    return (m + n) % 2 == 0 ? cplx(1, 0) : cplx(0, 1);
}

} // namespace detail

class Ordering {
public:
    static Ordering odd(i64 n) {
        require(n >= 2 && n % 2 == 1, errc::variant_dimension_mismatch,
                "odd ordering needs odd N, got " + std::to_string(n));
        return Ordering(Variant::odd, n, std::nullopt);
    }

    static Ordering even_nu(i64 n) {
        require(n >= 2 && n % 2 == 0, errc::variant_dimension_mismatch,
                "even-nu ordering needs even N, got " + std::to_string(n));
        return Ordering(Variant::even_nu, n, std::nullopt);
    }

    // Custom nu table (N x N). Validated: unit modulus, 1 on the axes, and
    // conj(nu_{N-m,N-n}) = (-1)^{m+n} nu_{mn} for 0 < m,n < N.
    static Ordering even_nu(i64 n, cmat table, double tol = default_tolerance()) {
        require(n >= 2 && n % 2 == 0, errc::variant_dimension_mismatch,
                "even-nu ordering needs even N, got " + std::to_string(n));
        require(table.rows() == n && table.cols() == n, errc::dimension_mismatch, "nu table must be N x N");
        for (i64 m = 0; m < n; ++m)
            for (i64 k = 0; k < n; ++k) {
                require(std::abs(std::abs(table(m, k)) - 1.0) < tol, errc::invariant_violation,
                        "|nu| != 1 at (" + std::to_string(m) + "," + std::to_string(k) + ")");
                if (m == 0 || k == 0)
                    require(std::abs(table(m, k) - cplx(1, 0)) < tol, errc::invariant_violation,
                            "nu must be 1 on the axes");
            }
        for (i64 m = 1; m < n; ++m)
            for (i64 k = 1; k < n; ++k) {
                const cplx lhs = std::conj(table(n - m, n - k));
                const cplx rhs = ((m + k) % 2 == 0 ? 1.0 : -1.0) * table(m, k);
                require(std::abs(lhs - rhs) < tol, errc::invariant_violation,
                        "nu conjugation constraint fails at (" + std::to_string(m) + "," + std::to_string(k) + ")");
            }
        return Ordering(Variant::even_nu, n, std::move(table));
    }

    static Ordering qubit_w1(i64 n) {
        require(n >= 2 && is_power_of_two(n), errc::variant_dimension_mismatch,
                "qubit-w1 ordering needs N = 2^k, got " + std::to_string(n));
        return Ordering(Variant::qubit_w1, n, std::nullopt);
    }

    static Ordering make(Variant v, i64 n) {
        switch (v) {
            case Variant::odd:      return odd(n);
            case Variant::even_nu:  return even_nu(n);
            case Variant::qubit_w1: return qubit_w1(n);
        }
        raise(errc::variant_dimension_mismatch, "unknown variant");
    }

    Variant variant() const { return variant_; }
    i64 dim() const { return N_; }
    bool has_custom_nu() const { return nu_.has_value(); }

    cplx nu(i64 m, i64 n) const {
        m = mod_reduce(m, N_);
        n = mod_reduce(n, N_);
        if (variant_ == Variant::qubit_w1) return w1_sign(m, n);
        if (nu_) return (*nu_)(m, n);
        return detail::default_nu(m, n);
    }

    // The full coefficient f(m,n), 1/N^2 included. Indices are residues.
    cplx coeff(i64 m, i64 n) const {
        m = mod_reduce(m, N_);
        n = mod_reduce(n, N_);
        const double norm = 1.0 / static_cast<double>(N_ * N_);
        switch (variant_) {
            case Variant::odd:
                return norm * omega_pow(N_, m * n * ((N_ + 1) / 2));
            case Variant::even_nu:
            case Variant::qubit_w1:
                return norm * nu(m, n) * tau_pow(N_, m * n);
        }
        raise(errc::variant_dimension_mismatch, "unknown variant");
    }

private:
    Ordering(Variant v, i64 n, std::optional<cmat> nu) : variant_(v), N_(n), nu_(std::move(nu)) {}

    // Signs of the 2^k distribution with simple marginals on L1. Products like
    // m * n^{-1} are reduced to {0..N-1} first and then treated as integers
    // inside the floor.
    cplx w1_sign(i64 m, i64 n) const {
        if (m == 0 || n == 0) return {1, 0};
        if (m % 2 == 0 && n % 2 == 0) return {1, 0};
        if (n % 2 == 1) {
            const i64 r = mod_reduce(m * mod_inverse(n, N_), N_);
            return ((r * n / N_) % 2 == 0) ? cplx(1, 0) : cplx(-1, 0);
        }
        // m odd, n even > 0
        const i64 r = mod_reduce(n * mod_inverse(m, N_), N_);
        return ((r * m / N_) % 2 == 0) ? cplx(1, 0) : cplx(-1, 0);
    }

    Variant variant_;
    i64 N_;
    std::optional<cmat> nu_;
};

// ---------------------------------------------------------------------------
// Phase-point operator sets

struct PhasePointSet {
    i64 N = 0;
    Ordering ordering;
    std::vector<cmat> ops; // index x*N + z

    const cmat& at(i64 x, i64 z) const { return ops[static_cast<size_t>(mod_reduce(x, N) * N + mod_reduce(z, N))]; }
    Variant variant() const { return ordering.variant(); }
};

struct WignerSetReport {
    double hermiticity = 0;
    double orthogonality = 0;
    double completeness = 0;
    double diagonal = 0;
    double axis_projector_z = 0; // sum_x a(x,z) vs |z-b><z-b|
    double axis_projector_x = 0; // sum_z a(x,z) vs Fourier projector at x-a
    i64 offset_x = 0;            // detected translation (0,0 for canonically built sets)
    i64 offset_z = 0;

    double worst() const {
        return std::max({hermiticity, orthogonality, completeness, diagonal, axis_projector_z, axis_projector_x});
    }
    bool pass(double tol) const { return worst() < tol; }
    bool canonical() const { return offset_x == 0 && offset_z == 0; }

    std::string summary() const {
        auto fmt = [](double v) { char b[32]; std::snprintf(b, sizeof b, "%.3e", v); return std::string(b); };
        return "hermiticity=" + fmt(hermiticity) + " orthogonality=" + fmt(orthogonality) +
               " completeness=" + fmt(completeness) + " diagonal=" + fmt(diagonal) +
               " axis_z=" + fmt(axis_projector_z) + " axis_x=" + fmt(axis_projector_x) +
               " offset=(" + std::to_string(offset_x) + "," + std::to_string(offset_z) + ")";
    }
};

// Structured invariant report: hermiticity, pairwise orthogonality
// tr(a a') = delta / N, completeness sum a = I, the delta diagonal, and both
// axis sums being rank-1 projectors onto computational (sum over x) resp.
// Fourier (sum over z) basis states. Translations permute the labels, so the
// offset is detected first and the label-sensitive checks run against it;
// canonically built sets report offset (0,0).
inline WignerSetReport verify_wigner_set(const PhasePointSet& set) {
    const i64 n = set.N;
    WignerSetReport rep;

    for (const auto& a : set.ops) rep.hermiticity = std::max(rep.hermiticity, max_abs(a - a.adjoint()));

    // Gram matrix of the flattened operators: tr(a_u a_v) for hermitian ops
    // equals <vec a_v, vec a_u>.
    cmat flat(n * n, n * n);
    for (i64 u = 0; u < n * n; ++u) {
        const cmat& a = set.ops[static_cast<size_t>(u)];
        for (i64 k = 0; k < n; ++k)
            for (i64 l = 0; l < n; ++l) flat(u, k * n + l) = a(k, l);
    }
    cmat gram = flat * flat.adjoint();
    gram -= (1.0 / static_cast<double>(n)) * cmat::Identity(n * n, n * n);
    rep.orthogonality = max_abs(gram);

    cmat total = cmat::Zero(n, n);
    for (const auto& a : set.ops) total += a;
    rep.completeness = max_abs(total - cmat::Identity(n, n));

    // offset_z from the diagonal of a(0,0) (largest diagonal entry should be
    // the 1/N at index -offset_z), offset_x from the best Fourier projector
    // match of sum_z a(0,z).
    {
        i64 kmax = 0;
        double best = -1;
        for (i64 k = 0; k < n; ++k)
            if (std::abs(set.at(0, 0)(k, k)) > best) { best = std::abs(set.at(0, 0)(k, k)); kmax = k; }
        rep.offset_z = mod_reduce(-kmax, n);
    }
    const cmat f = qft(n);
    {
        cmat q = cmat::Zero(n, n);
        for (i64 z = 0; z < n; ++z) q += set.at(0, z);
        i64 xbest = 0;
        double best = 1e300;
        for (i64 x = 0; x < n; ++x) {
            const cvec v = f.col(x);
            const double d = max_abs(q - cmat(v * v.adjoint()));
            if (d < best) { best = d; xbest = x; }
        }
        rep.offset_x = mod_reduce(-xbest, n);
    }

    for (i64 x = 0; x < n; ++x)
        for (i64 z = 0; z < n; ++z) {
            const cmat& a = set.at(x, z);
            const i64 kz = mod_reduce(z - rep.offset_z, n);
            for (i64 k = 0; k < n; ++k) {
                const double want = (k == kz) ? 1.0 / static_cast<double>(n) : 0.0;
                rep.diagonal = std::max(rep.diagonal, std::abs(a(k, k) - want));
            }
        }

    for (i64 z = 0; z < n; ++z) {
        cmat p = cmat::Zero(n, n);
        for (i64 x = 0; x < n; ++x) p += set.at(x, z);
        cmat proj = cmat::Zero(n, n);
        proj(mod_reduce(z - rep.offset_z, n), mod_reduce(z - rep.offset_z, n)) = 1;
        rep.axis_projector_z = std::max(rep.axis_projector_z, std::max(max_abs(p * p - p), max_abs(p - proj)));
    }
    for (i64 x = 0; x < n; ++x) {
        cmat q = cmat::Zero(n, n);
        for (i64 z = 0; z < n; ++z) q += set.at(x, z);
        const cvec v = f.col(mod_reduce(x - rep.offset_x, n));
        rep.axis_projector_x = std::max(rep.axis_projector_x, std::max(max_abs(q * q - q), max_abs(q - cmat(v * v.adjoint()))));
    }
    return rep;
}

namespace detail {

inline cmat closed_form_odd(const Ordering& f, i64 x, i64 z) {
    const i64 n = f.dim();
    cmat a = cmat::Zero(n, n);
    for (i64 k = 0; k < n; ++k)
        for (i64 l = 0; l < n; ++l)
            if (mod_reduce(k + l - 2 * z, n) == 0) a(k, l) = omega_pow(n, -(k - l) * x) / static_cast<double>(n);
    return a;
}

inline cmat closed_form_even_default(const Ordering& f, i64 x, i64 z) {
    const i64 n = f.dim();
    const double n2 = static_cast<double>(n * n);
    cmat a = cmat::Zero(n, n);
    for (i64 k = 0; k < n; ++k)
        for (i64 l = 0; l < n; ++l) {
            const i64 m = mod_reduce(k - l, n);
            if (m % 2 == 0) {
                if (m == 0) {
                    if (k == z) a(k, l) = 1.0 / static_cast<double>(n);
                    continue;
                }
                const i64 s = mod_reduce(m / 2 + l - z, n);
                if (s == 0)
                    a(k, l) = omega_pow(n, -(k - l) * x) * cplx(1, 1) / (2.0 * n);
                else if (s == n / 2)
                    a(k, l) = omega_pow(n, -(k - l) * x) * cplx(1, -1) / (2.0 * n);
            } else {
                const double theta = pi * static_cast<double>(m + 2 * mod_reduce(l - z, n)) / static_cast<double>(n);
                const double cot = std::cos(theta) / std::sin(theta);
                const double csc = 1.0 / std::sin(theta);
                a(k, l) = omega_pow(n, -(k - l) * x) * cplx(1.0 - cot, csc) / n2;
            }
        }
    return a;
}

} // namespace detail

// Builds all N^2 operators from the definition sum (with the inner sum over n
// precomputed: a_{kl} = omega^{-(k-l)x} S(k-l, l-z), S(m,r) = sum_n f(m,n) omega^{nr}).
// The odd and default-nu even sets are additionally checked against their
// sparse closed forms, and the full invariant suite runs before returning;
// any failure is a hard invariant_violation.
inline PhasePointSet build_phase_point_set(const Ordering& f, bool verify = true,
                                           double tol = 1e-9) {
    const i64 n = f.dim();
    cmat s_table(n, n); // S(m, r)
    for (i64 m = 0; m < n; ++m)
        for (i64 r = 0; r < n; ++r) {
            cplx acc = 0;
            for (i64 k = 0; k < n; ++k) acc += f.coeff(m, k) * omega_pow(n, k * r);
            s_table(m, r) = acc;
        }

    PhasePointSet set{n, f, {}};
    set.ops.reserve(static_cast<size_t>(n * n));
    for (i64 x = 0; x < n; ++x)
        for (i64 z = 0; z < n; ++z) {
            cmat a(n, n);
            for (i64 k = 0; k < n; ++k)
                for (i64 l = 0; l < n; ++l)
                    a(k, l) = omega_pow(n, -(k - l) * x) * s_table(mod_reduce(k - l, n), mod_reduce(l - z, n));
            set.ops.push_back(std::move(a));
        }

    if (verify) {
        const bool check_closed_form =
            f.variant() == Variant::odd || (f.variant() == Variant::even_nu && !f.has_custom_nu());
        if (check_closed_form) {
            double dev = 0;
            for (i64 x = 0; x < n; ++x)
                for (i64 z = 0; z < n; ++z) {
                    const cmat ref = (f.variant() == Variant::odd) ? detail::closed_form_odd(f, x, z)
                                                                   : detail::closed_form_even_default(f, x, z);
                    dev = std::max(dev, max_abs(set.at(x, z) - ref));
                }
            require(dev < tol, errc::invariant_violation,
                    "definition sum disagrees with the closed form by " + std::to_string(dev));
        }
        const WignerSetReport rep = verify_wigner_set(set);
        if (!rep.pass(tol))
            raise(errc::invariant_violation, "phase-point set invariants violated: " + rep.summary());
    }
    return set;
}

inline PhasePointSet build_phase_point_set(Variant v, i64 n, bool verify = true) {
    return build_phase_point_set(Ordering::make(v, n), verify);
}

// ---------------------------------------------------------------------------
// Distribution grids

struct WignerGrid {
    i64 N = 0;
    Variant variant = Variant::odd;
    rmat values; // values(x, z)

    double sum() const { return values.sum(); }
};

// W(x,z) = tr(rho a(x,z)) for a hermitian operator; density check optional so
// the process pipeline can push non-state hermitian inputs through.
inline WignerGrid wigner(const cmat& rho, const PhasePointSet& set, bool require_density = true,
                         double tol = default_tolerance()) {
    const i64 n = set.N;
    require(rho.rows() == n && rho.cols() == n, errc::dimension_mismatch, "state dimension mismatch");
    if (require_density)
        require(is_density(rho, std::max(tol, 1e-9)), errc::not_a_density_matrix, "input is not a density matrix");
    WignerGrid grid{n, set.variant(), rmat(n, n)};
    double imag_residue_limit = std::max(tol, 1e-9);
    double imag_residue = 0;
    for (i64 x = 0; x < n; ++x)
        for (i64 z = 0; z < n; ++z) {
            const cplx w = (rho * set.at(x, z)).trace();
            imag_residue = std::max(imag_residue, std::abs(w.imag()));
            grid.values(x, z) = w.real();
        }
    require(imag_residue < imag_residue_limit, errc::imaginary_residue,
            "imaginary residue " + std::to_string(imag_residue));
    return grid;
}

// rho = N sum_{x,z} W(x,z) a(x,z).
inline cmat reconstruct_from_wigner(const WignerGrid& grid, const PhasePointSet& set) {
    require(grid.N == set.N, errc::dimension_mismatch, "grid/set dimension mismatch");
    const i64 n = set.N;
    cmat rho = cmat::Zero(n, n);
    for (i64 x = 0; x < n; ++x)
        for (i64 z = 0; z < n; ++z) rho += grid.values(x, z) * set.at(x, z);
    return static_cast<double>(n) * rho;
}

// Symbol t(x,z) = tr(T a(x,z)) of a hermitian observable.
inline rmat observable_symbol(const cmat& t, const PhasePointSet& set, double tol = default_tolerance()) {
    require(t.rows() == set.N && t.cols() == set.N, errc::dimension_mismatch, "observable dimension mismatch");
    require(is_hermitian(t, std::max(tol, 1e-9)), errc::not_hermitian, "observable is not hermitian");
    rmat sym(set.N, set.N);
    for (i64 x = 0; x < set.N; ++x)
        for (i64 z = 0; z < set.N; ++z) sym(x, z) = (t * set.at(x, z)).trace().real();
    return sym;
}

// <T> = N sum_{x,z} W(x,z) t(x,z); the factor N pairs with the expansion
// rho = N sum W a and the symbol convention t = tr(T a).
inline double expectation(const WignerGrid& grid, const rmat& symbol) {
    require(grid.values.rows() == symbol.rows() && grid.values.cols() == symbol.cols(),
            errc::dimension_mismatch, "grid/symbol dimension mismatch");
    return static_cast<double>(grid.N) * (grid.values.array() * symbol.array()).sum();
}

// Translated set: the operator at (x,z) is the original at (x-a, z-b).
inline PhasePointSet translate_set(const PhasePointSet& set, i64 a, i64 b) {
    const i64 n = set.N;
    PhasePointSet out{n, set.ordering, std::vector<cmat>(static_cast<size_t>(n * n))};
    for (i64 x = 0; x < n; ++x)
        for (i64 z = 0; z < n; ++z)
            out.ops[static_cast<size_t>(x * n + z)] = set.at(x - a, z - b);
    return out;
}

} // namespace fps
