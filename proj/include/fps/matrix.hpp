#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "errors.hpp"
#include "zn.hpp"

namespace fps {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rmat = Eigen::MatrixXd;
using rvec = Eigen::VectorXd;

inline constexpr double pi = std::numbers::pi;

// Default absolute tolerance for the unitarity/hermiticity/density predicates
// and the internal consistency assertions. FPS_TOLERANCE overrides it.
inline double default_tolerance() {
    static const double tol = [] {
        if (const char* env = std::getenv("FPS_TOLERANCE")) {
            char* end = nullptr;
            double v = std::strtod(env, &end);
            if (end != env && v > 0) return v;
        }
        return 1e-10;
    }();
    return tol;
}

// tau = exp(i pi / N), the primitive 2N-th root; omega = tau^2. Exponents are
// reduced mod 2N before exponentiation so large powers do not drift.
inline cplx tau_pow(i64 n, i64 k) {
    k = mod_reduce(k, 2 * n);
    return std::polar(1.0, pi * static_cast<double>(k) / static_cast<double>(n));
}

inline cplx omega_pow(i64 n, i64 k) { return tau_pow(n, 2 * mod_reduce(k, n)); }
inline cplx omega(i64 n) { return omega_pow(n, 1); }

inline cmat kron(const cmat& a, const cmat& b) {
    cmat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline double max_abs(const cmat& m) { return m.cwiseAbs().maxCoeff(); }

inline double frob_dist(const cmat& a, const cmat& b) { return (a - b).norm(); }

inline bool is_unitary(const cmat& m, double tol = default_tolerance()) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m.adjoint() * m - cmat::Identity(m.rows(), m.cols())) < tol;
}

inline bool is_hermitian(const cmat& m, double tol = default_tolerance()) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m - m.adjoint()) < tol;
}

// Positive semidefinite, trace 1, hermitian.
inline bool is_density(const cmat& m, double tol = default_tolerance()) {
    if (!is_hermitian(m, tol)) return false;
    if (std::abs(m.trace() - cplx(1.0, 0.0)) > tol) return false;
    Eigen::SelfAdjointEigenSolver<cmat> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() > -tol;
}

inline cmat hermitize(const cmat& m) { return 0.5 * (m + m.adjoint()); }

inline double min_eigenvalue(const cmat& hermitian) {
    Eigen::SelfAdjointEigenSolver<cmat> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

// Nearest state with nonnegative spectrum: clip negative eigenvalues to zero
// and renormalize the trace.
inline cmat clip_to_physical(const cmat& hermitian) {
    Eigen::SelfAdjointEigenSolver<cmat> es(hermitian);
    rvec vals = es.eigenvalues().cwiseMax(0.0);
    double total = vals.sum();
    require(total > 0, errc::invalid_distribution, "operator has no positive spectral weight");
    vals /= total;
    return es.eigenvectors() * vals.asDiagonal().toDenseMatrix().cast<cplx>() * es.eigenvectors().adjoint();
}

// Uhlmann fidelity F(rho,sigma) = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
inline double fidelity(const cmat& rho, const cmat& sigma) {
    Eigen::SelfAdjointEigenSolver<cmat> es(rho);
    rvec vals = es.eigenvalues().cwiseMax(0.0);
    cmat sqrt_rho = es.eigenvectors() * vals.cwiseSqrt().asDiagonal().toDenseMatrix().cast<cplx>() * es.eigenvectors().adjoint();
    Eigen::SelfAdjointEigenSolver<cmat> inner(hermitize(sqrt_rho * sigma * sqrt_rho));
    double s = inner.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return s * s;
}

} // namespace fps
