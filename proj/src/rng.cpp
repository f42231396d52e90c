#include "luq/rng.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace luq {

std::uint64_t Rng::next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::angle() {
    return 2.0 * std::numbers::pi * uniform();
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = mag * std::sin(ang);
    have_spare_ = true;
    return mag * std::cos(ang);
}

Complex Rng::normal_complex() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

Rng Rng::split(std::uint64_t index) const {
    Rng child(state_ ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    child.next_u64();
    return child;
}

CMatrix haar_unitary(Index n, Rng& rng) {
    CMatrix g(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) g(i, j) = rng.normal_complex();
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    return q;
}

RVector simplex_spectrum(Index n, Rng& rng, double min_gap) {
    RVector vals(n);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        double sum = 0.0;
        for (Index i = 0; i < n; ++i) {
            double u = rng.uniform();
            while (u <= 0.0) u = rng.uniform();
            vals(i) = -std::log(u);
            sum += vals(i);
        }
        vals /= sum;
        std::sort(vals.data(), vals.data() + n, std::greater<>());
        bool ok = true;
        for (Index i = 0; i + 1 < n; ++i)
            if (vals(i) - vals(i + 1) <= min_gap) ok = false;
        if (ok) return vals;
    }
    return vals;  // astronomically unlikely; last draw
}

}  // namespace luq
