#pragma once

/**
 * @file reconstruct.hpp
 * @brief Inverse Radon transform: frequency assembly and state/process recovery.
 *
 * One marginal record for M determines the 2-D Fourier transform of the grid
 * on the frequency line of M:
 *
 *   W~(c t, -a t) = (1/N) sum_z probs(z) omega^{z t}
 *
 * with the forward transform normalized as f~(mu) = (1/N) sum_u f(u)
 * omega^{-mu.u}. A set of records whose lines cover the dual grid therefore
 * assembles the full transform; the inverse transform and the phase-point
 * expansion rho = N sum W a recover the state.
 */

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "radon.hpp"

namespace fps {

struct FrequencyGrid {
    i64 N = 0;
    cmat values;
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask;

    bool complete() const { return mask.all(); }

    std::vector<point> missing() const {
        std::vector<point> out;
        for (i64 i = 0; i < N; ++i)
            for (i64 j = 0; j < N; ++j)
                if (!mask(i, j)) out.push_back({i, j});
        return out;
    }

    // For transforms of real grids, W~(-mu) = conj(W~(mu)).
    double conjugate_symmetry_violation() const {
        double dev = 0;
        for (i64 i = 0; i < N; ++i)
            for (i64 j = 0; j < N; ++j)
                dev = std::max(dev, std::abs(values(i, j) - std::conj(values(mod_reduce(-i, N), mod_reduce(-j, N)))));
        return dev;
    }
};

// Forward transform on Z_N x Z_N, direct evaluation (desk-scale dimensions).
inline FrequencyGrid fft2_zn(const cmat& grid) {
    const i64 n = grid.rows();
    require(grid.cols() == n, errc::dimension_mismatch, "grid must be square");
    FrequencyGrid out{n, cmat::Zero(n, n), Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, true)};
    for (i64 m1 = 0; m1 < n; ++m1)
        for (i64 m2 = 0; m2 < n; ++m2) {
            cplx acc = 0;
            for (i64 u1 = 0; u1 < n; ++u1)
                for (i64 u2 = 0; u2 < n; ++u2) acc += grid(u1, u2) * omega_pow(n, -(m1 * u1 + m2 * u2));
            out.values(m1, m2) = acc / static_cast<double>(n);
        }
    return out;
}

inline FrequencyGrid fft2_zn(const rmat& grid) { return fft2_zn(cmat(grid.cast<cplx>())); }

inline cmat ifft2_zn(const FrequencyGrid& freq) {
    const i64 n = freq.N;
    cmat out = cmat::Zero(n, n);
    for (i64 u1 = 0; u1 < n; ++u1)
        for (i64 u2 = 0; u2 < n; ++u2) {
            cplx acc = 0;
            for (i64 m1 = 0; m1 < n; ++m1)
                for (i64 m2 = 0; m2 < n; ++m2) acc += freq.values(m1, m2) * omega_pow(n, m1 * u1 + m2 * u2);
            out(u1, u2) = acc / static_cast<double>(n);
        }
    return out;
}

// The frequency samples one record determines: value (1/N) sum_z probs(z)
// omega^{zt} at point (c t, -a t) of the record's line.
inline std::vector<std::pair<point, cplx>> line_spectrum(const MarginalRecord& rec) {
    const i64 n = rec.M.N;
    const auto pts = frequency_line_points(rec.line);
    std::vector<std::pair<point, cplx>> out;
    out.reserve(static_cast<size_t>(n));
    for (i64 t = 0; t < n; ++t) {
        cplx acc = 0;
        for (i64 z = 0; z < n; ++z) acc += rec.probs(z) * omega_pow(n, z * t);
        out.emplace_back(pts[static_cast<size_t>(t)], acc / static_cast<double>(n));
    }
    return out;
}

// Fills the dual grid from a dataset along a covering plan. Overlapping
// contributions must agree within consistency_tol and are averaged. Raises
// incomplete_cover when a plan line has no record or frequencies stay
// unfilled, inconsistent_overlap when contributions disagree.
inline FrequencyGrid assemble_frequency(const RadonDataset& dataset, const std::vector<FrequencyLine>& plan,
                                        double consistency_tol = 1e-6) {
    const i64 n = dataset.N;
    cmat sums = cmat::Zero(n, n);
    rmat counts = rmat::Zero(n, n);
    double overlap_dev = 0;

    for (const auto& fl : plan) {
        const MarginalRecord* rec = nullptr;
        for (const auto& r : dataset.records)
            if (r.line == fl) { rec = &r; break; }
        if (!rec) {
            std::string pts;
            for (auto p : frequency_line_points(fl)) pts += " (" + std::to_string(p.x) + "," + std::to_string(p.z) + ")";
            raise(errc::incomplete_cover, "no record for line " + fl.str() + "; unfilled frequencies:" + pts);
        }
        for (const auto& [p, v] : line_spectrum(*rec)) {
            if (counts(p.x, p.z) > 0) {
                const cplx mean = sums(p.x, p.z) / counts(p.x, p.z);
                overlap_dev = std::max(overlap_dev, std::abs(mean - v));
            }
            sums(p.x, p.z) += v;
            counts(p.x, p.z) += 1;
        }
    }

    require(overlap_dev <= consistency_tol, errc::inconsistent_overlap,
            "overlapping lines disagree by " + std::to_string(overlap_dev));

    FrequencyGrid out{n, cmat::Zero(n, n), Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, false)};
    for (i64 i = 0; i < n; ++i)
        for (i64 j = 0; j < n; ++j)
            if (counts(i, j) > 0) {
                out.values(i, j) = sums(i, j) / counts(i, j);
                out.mask(i, j) = true;
            }
    if (!out.complete()) {
        std::string pts;
        for (auto p : out.missing()) pts += " (" + std::to_string(p.x) + "," + std::to_string(p.z) + ")";
        raise(errc::incomplete_cover, "plan leaves frequencies unfilled:" + pts);
    }
    return out;
}

struct ReconstructionResult {
    cmat rho;           // hermitized, trace-normalized estimate
    cmat rho_physical;  // negative eigenvalues clipped, renormalized
    WignerGrid grid;    // recovered distribution grid
    double min_eigenvalue = 0;
    double imag_residue = 0; // largest imaginary part left in the recovered grid
};

// Full pipeline: assemble the dual grid from the dataset's own lines (which
// must cover), invert the transform, expand in the phase-point basis.
inline ReconstructionResult reconstruct_state(const RadonDataset& dataset, const PhasePointSet& set,
                                              double consistency_tol = 1e-6) {
    require(dataset.N == set.N, errc::dimension_mismatch, "dataset/set dimension mismatch");
    require(dataset.variant == set.variant(), errc::variant_dimension_mismatch, "dataset/set variant mismatch");
    std::vector<FrequencyLine> plan;
    for (const auto& r : dataset.records) plan.push_back(r.line);
    const FrequencyGrid freq = assemble_frequency(dataset, plan, consistency_tol);

    const cmat w_complex = ifft2_zn(freq);
    ReconstructionResult res{cmat(), cmat(), WignerGrid{set.N, set.variant(), rmat(w_complex.real())}, 0, 0};
    res.imag_residue = w_complex.imag().cwiseAbs().maxCoeff();

    cmat rho = hermitize(reconstruct_from_wigner(res.grid, set));
    const double tr = rho.trace().real();
    require(std::abs(tr) > 1e-12, errc::invalid_distribution, "reconstructed operator has vanishing trace");
    rho /= tr;
    res.rho = rho;
    res.min_eigenvalue = min_eigenvalue(rho);
    res.rho_physical = clip_to_physical(rho);
    return res;
}

// ---------------------------------------------------------------------------
// Dataset builders

// SL(2) matrix whose marginal record determines the given frequency line,
// compatible with the variant's marginal operation (for w1 the matrix is the
// L1 element whose inverse has the line as first column).
inline Sl2 plan_matrix(Variant v, const FrequencyLine& fl) {
    const i64 n = fl.N;
    if (v != Variant::qubit_w1) return sl2_with_first_column(fl);
    const i64 a = mod_reduce(fl.a, n), c = mod_reduce(fl.c, n);
    if (a == 1) return Sl2(1, 0, -c, 1, n);
    if (c == 1 && a % 2 == 0) return Sl2(1, n - a - 1, 1, n - a, n);
    raise(errc::not_in_l1, "line " + fl.str() + " has no L1-compatible plan matrix");
}

// Exact marginals of rho along the given lines (defaults to cover_lines).
inline RadonDataset make_exact_dataset(const cmat& rho, const PhasePointSet& set,
                                       std::vector<FrequencyLine> lines = {}) {
    const i64 n = set.N;
    if (lines.empty()) lines = cover_lines(n);
    RadonDataset ds{n, set.variant(), {}};
    WignerGrid grid; // built lazily for the variants without a universal closed form
    bool have_grid = false;
    for (const auto& fl : lines) {
        const Sl2 m = plan_matrix(set.variant(), fl);
        switch (set.variant()) {
            case Variant::odd:
                ds.add(marginal_simple_odd(rho, m, set));
                break;
            case Variant::qubit_w1:
                ds.add(marginal_qubit_w1(rho, m, set));
                break;
            case Variant::even_nu: {
                if (!have_grid) { grid = wigner(rho, set); have_grid = true; }
                rvec probs;
                try {
                    probs = marginal_even_general(rho, m, set);
                } catch (const error& e) {
                    if (e.code() != errc::precondition_nu) throw;
                    probs = radon_direct(grid, m);
                }
                ds.add({m, std::move(probs), "direct", marginal_line(Variant::even_nu, m)});
                break;
            }
        }
    }
    return ds;
}

// Same lines, but each probability vector replaced by frequencies estimated
// from a seeded multinomial sample of `shots` measurements.
inline RadonDataset make_sampled_dataset(const cmat& rho, const PhasePointSet& set, i64 shots,
                                         std::uint64_t seed, std::vector<FrequencyLine> lines = {}) {
    RadonDataset exact = make_exact_dataset(rho, set, std::move(lines));
    std::uint64_t k = 0;
    for (auto& rec : exact.records) {
        const auto counts = simulate_counts(rec.probs, shots, seed + 0x9e3779b97f4a7c15ULL * ++k);
        for (i64 i = 0; i < rec.probs.size(); ++i) rec.probs(i) = static_cast<double>(counts(i)) / static_cast<double>(shots);
    }
    return exact;
}

// ---------------------------------------------------------------------------
// Process tomography

using Channel = std::function<cmat(const cmat&)>;

// Matrix of a linear channel in the phase-point basis:
// T(x',z' : x,z) = N tr(a(x',z') channel(a(x,z))), rows and columns indexed
// row-major by x*N + z.
struct ProcessMatrix {
    i64 N = 0;
    rmat values; // N^2 x N^2

    double at(point out, point in) const { return values(out.x * N + out.z, in.x * N + in.z); }
};

inline ProcessMatrix process_matrix_forward(const Channel& channel, const PhasePointSet& set) {
    const i64 n = set.N;
    ProcessMatrix t{n, rmat(n * n, n * n)};
    for (i64 u = 0; u < n * n; ++u) {
        const cmat mapped = channel(set.ops[static_cast<size_t>(u)]);
        require(mapped.rows() == n && mapped.cols() == n, errc::dimension_mismatch,
                "channel output dimension mismatch");
        for (i64 v = 0; v < n * n; ++v)
            t.values(v, u) = static_cast<double>(n) * (set.ops[static_cast<size_t>(v)] * mapped).trace().real();
    }
    return t;
}

// Transition-probability identity for the process matrix in odd dimension:
// the normalized double line sum of T equals the transition probability
// between the marginal-basis projectors of M and M',
//
//   (1/N) sum_{x,x'} T(M'(x',z') : M(x,z))
//     = <beta'_{j'(z')} | channel(|beta_{j(z)}><beta_{j(z)}|) | beta'_{j'(z')}>
//
// Returns the maximum absolute deviation over (z, z').
inline double process_radon_check(const Channel& channel, const PhasePointSet& set, const Sl2& m,
                                  const Sl2& mp) {
    const i64 n = set.N;
    if (n % 2 == 0) raise(errc::even_dimension, "process identity implemented for odd dimension");
    require(set.variant() == Variant::odd, errc::variant_dimension_mismatch, "needs the odd set");
    require(m.N == n && mp.N == n, errc::dimension_mismatch, "matrix dimension mismatch");

    const ProcessMatrix t = process_matrix_forward(channel, set);
    const auto basis_in = detail::odd_marginal_basis(m);
    const auto basis_out = detail::odd_marginal_basis(mp);

    double dev = 0;
    for (i64 z = 0; z < n; ++z) {
        const cvec in = basis_in.col(detail::odd_marginal_index(m, z));
        const cmat mapped = channel(cmat(in * in.adjoint()));
        for (i64 zp = 0; zp < n; ++zp) {
            double lhs = 0;
            for (i64 x = 0; x < n; ++x)
                for (i64 xp = 0; xp < n; ++xp) lhs += t.at(mp.apply({xp, zp}), m.apply({x, z}));
            lhs /= static_cast<double>(n);
            const cvec out = basis_out.col(detail::odd_marginal_index(mp, zp));
            const double rhs = (out.adjoint() * mapped * out)(0, 0).real();
            dev = std::max(dev, std::abs(lhs - rhs));
        }
    }
    return dev;
}

// Superoperator matrix (N^2 x N^2, acting on row-major vectorized operators)
// wrapped as a callable channel.
inline Channel channel_from_superoperator(const cmat& s, i64 n) {
    require(s.rows() == n * n && s.cols() == n * n, errc::dimension_mismatch,
            "superoperator must be N^2 x N^2");
    return [s, n](const cmat& a) {
        require(a.rows() == n && a.cols() == n, errc::dimension_mismatch, "operator dimension mismatch");
        cvec v(n * n);
        for (i64 i = 0; i < n; ++i)
            for (i64 j = 0; j < n; ++j) v(i * n + j) = a(i, j);
        const cvec w = s * v;
        cmat out(n, n);
        for (i64 i = 0; i < n; ++i)
            for (i64 j = 0; j < n; ++j) out(i, j) = w(i * n + j);
        return out;
    };
}

inline cmat superoperator_of_unitary(const cmat& u) {
    const i64 n = u.rows();
    cmat s(n * n, n * n);
    // row-major vectorization: S[(i,j),(k,l)] = U(i,k) conj(U(j,l))
    for (i64 i = 0; i < n; ++i)
        for (i64 j = 0; j < n; ++j)
            for (i64 k = 0; k < n; ++k)
                for (i64 l = 0; l < n; ++l) s(i * n + j, k * n + l) = u(i, k) * std::conj(u(j, l));
    return s;
}

} // namespace fps
