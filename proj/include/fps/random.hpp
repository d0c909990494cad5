#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "matrix.hpp"
#include "zn.hpp"

namespace fps {

// Seeded generator with hand-rolled distributions so that outputs are
// bit-identical across standard libraries (std distributions are not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0,1) with 53 bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller.
    double gaussian() {
        if (have_spare_) { have_spare_ = false; return spare_; }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    cplx cgaussian() { return {gaussian(), gaussian()}; }

    std::uint64_t raw() { return eng_(); }

    i64 below(i64 n) { return static_cast<i64>(eng_() % static_cast<std::uint64_t>(n)); }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline cvec random_pure(i64 n, Rng& rng) {
    cvec v(n);
    for (i64 i = 0; i < n; ++i) v(i) = rng.cgaussian();
    v.normalize();
    return v;
}

inline cmat random_pure_density(i64 n, Rng& rng) {
    cvec v = random_pure(n, rng);
    return v * v.adjoint();
}

// Full-rank mixed state G G^dag / tr.
inline cmat random_density(i64 n, Rng& rng) {
    cmat g(n, n);
    for (i64 i = 0; i < n; ++i)
        for (i64 j = 0; j < n; ++j) g(i, j) = rng.cgaussian();
    cmat rho = g * g.adjoint();
    return rho / rho.trace().real();
}

// Haar-ish unitary: QR of a Gaussian matrix with the phases of R's diagonal
// absorbed into Q.
inline cmat random_unitary(i64 n, Rng& rng) {
    cmat g(n, n);
    for (i64 i = 0; i < n; ++i)
        for (i64 j = 0; j < n; ++j) g(i, j) = rng.cgaussian();
    Eigen::HouseholderQR<cmat> qr(g);
    cmat q = qr.householderQ();
    cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (i64 j = 0; j < n; ++j) {
        cplx d = r(j, j);
        q.col(j) *= (std::abs(d) > 0 ? d / std::abs(d) : cplx(1, 0));
    }
    return q;
}

inline Sl2 random_sl2(i64 n, Rng& rng) {
    for (;;) {
        auto m = Sl2::maybe(rng.below(n), rng.below(n), rng.below(n), rng.below(n), n);
        if (m) return *m;
    }
}

} // namespace fps
