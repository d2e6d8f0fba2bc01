#pragma once

// Independent reference values used by the tests.  Nothing here calls into the
// library's special-function code.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>, boost::multiprecision::et_off>;

/// I_n(x) = Σ_k (x/2)^{2k+n} / (k! (n+k)!)
template <class Real>
Real bessel_i(int n, const Real& x) {
    using std::pow;
    const Real h = x / 2, h2 = h * h;
    Real term = 1;
    for (int k = 1; k <= n; ++k) term *= h / k;
    Real sum = term;
    for (int k = 1; k < 100000; ++k) {
        term *= h2 / (Real(k) * Real(n + k));
        sum += term;
        if (term < sum * std::numeric_limits<Real>::epsilon() / 16) break;
    }
    return sum;
}

/// K_n(x) = ∫_0^∞ e^{−x cosh t} cosh(nt) dt by the trapezoidal rule, which is
/// geometrically convergent for this integrand.
template <class Real>
Real bessel_k(int n, const Real& x, double h = 0.02) {
    using std::exp;
    using std::log;
    const Real eh = exp(Real(h)), enh = exp(Real(n) * Real(h));
    Real et = 1, ent = 1;
    Real sum = 0, peak_log = -1e300;
    const double digits_log = std::numeric_limits<Real>::digits10 * 2.31 + 20;
    for (int k = 0;; ++k) {
        const Real ch = (et + 1 / et) / 2;
        const Real cnh = (ent + 1 / ent) / 2;
        const Real lg = -x * ch + log(cnh);
        const Real f = exp(lg);
        sum += k == 0 ? f / 2 : f;
        const double lgd = static_cast<double>(lg);
        if (lgd > peak_log) peak_log = lgd;
        // past the peak and far below it
        if (lgd < peak_log - digits_log && static_cast<double>(x * (et - 1 / et) / 2) > n) break;
        et *= eh;
        ent *= enh;
    }
    return sum * Real(h);
}

/// Log-uniform x in [lo, hi] and uniform n in [0, n_max], fixed seed.
struct BesselSample {
    int n;
    double x;
};

inline std::vector<BesselSample> bessel_samples(int count, std::uint64_t seed, int n_max = 64, double lo = 1e-3,
                                                double hi = 50) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> nd(0, n_max);
    std::uniform_real_distribution<double> ld(std::log(lo), std::log(hi));
    std::vector<BesselSample> s;
    for (int i = 0; i < count; ++i) {
        const int n = nd(rng);
        s.push_back({n, std::exp(ld(rng))});
    }
    return s;
}

/// Dense Gaussian elimination with partial pivoting; returns A^{-1}.
template <class Real>
std::vector<std::vector<Real>> dense_inverse(std::vector<std::vector<Real>> a) {
    using std::abs;
    const std::size_t n = a.size();
    std::vector<std::vector<Real>> inv(n, std::vector<Real>(n, Real(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (abs(a[r][c]) > abs(a[p][c])) p = r;
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        const Real d = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= d;
            inv[c][j] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const Real f = a[r][c];
            if (f == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

/// c(θ) straight from the kernel definition, with K_1 from the quadrature above.
template <class Real>
Real kernel_c(double R, double alpha, double rho, const Real& theta) {
    using std::cos;
    using std::sqrt;
    const Real d = sqrt(Real(R * R + rho * rho) - 2 * Real(R) * Real(rho) * cos(theta));
    return -Real(alpha) * bessel_k(1, Real(alpha) * d) * (Real(R) - Real(rho) * cos(theta)) / d;
}

}  // namespace oracle
