#pragma once

// Modified Bessel functions I_n and K_n of integer order and real argument.
//
// Every routine is a template on the floating type so the same code can be
// instantiated with an extended-precision type (boost::multiprecision) when a
// computation needs more than double resolution.  Tolerances derive from
// std::numeric_limits<Real>::epsilon().
//
// Algorithms:
//   I_n, x small   power series (all terms positive)
//   I_n, x large   Hankel asymptotic series for e^{-x} I_0, continued fraction
//                  for I_{n+1}/I_n, Miller backward recurrence down to I_0
//   K_0, K_1       series for x <= 2, Steed's continued fraction otherwise
//   K_n            forward recurrence (stable upward)
//
// Values are carried internally as mantissa * exp(log_scale) so products such
// as K_{n+1}(a) I_{n+1}(b) stay representable even when the factors are not.

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/fpclassify.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mfs/errors.hpp"

namespace mfs::specfun {

/// mantissa * exp(log_scale), mantissa > 0.
template <class Real>
struct Scaled {
    Real mantissa{1};
    Real log_scale{0};

    Real log() const {
        using std::log;
        return log(mantissa) + log_scale;
    }

    /// Plain value; throws OverflowError/UnderflowError if not representable.
    Real value() const {
        using std::exp;
        using std::fabs;
        const Real lv = log();
        if (lv > log_max()) throw OverflowError("Bessel value overflows: log = " + str(lv));
        if (lv < log_min()) throw UnderflowError("Bessel value underflows: log = " + str(lv));
        if (fabs(log_scale) < log_max() / 2) return mantissa * exp(log_scale);
        return exp(lv);
    }

    static Real log_max() {
        using std::log;
        return log(std::numeric_limits<Real>::max());
    }
    static Real log_min() {
        using std::log;
        return log(std::numeric_limits<Real>::min());
    }

private:
    static std::string str(const Real& v) { return std::to_string(static_cast<double>(v)); }
};

template <class Real>
Scaled<Real> operator*(const Scaled<Real>& a, const Scaled<Real>& b) {
    return {a.mantissa * b.mantissa, a.log_scale + b.log_scale};
}

template <class Real>
Scaled<Real> operator/(const Scaled<Real>& a, const Scaled<Real>& b) {
    return {a.mantissa / b.mantissa, a.log_scale - b.log_scale};
}

namespace detail {

template <class Real>
void check_args(int n, const Real& x) {
    if (n < 0) throw DomainError("Bessel order must be >= 0, got " + std::to_string(n));
    if (!(boost::math::isfinite)(x) || !(x > 0))
        throw DomainError("Bessel argument must be finite and > 0");
}

template <class Real>
Real eps() {
    return std::numeric_limits<Real>::epsilon();
}

// Rescaling thresholds for running products.
template <class Real>
Real big() {
    using std::sqrt;
    return sqrt(std::numeric_limits<Real>::max());
}

template <class Real>
Real small() {
    using std::sqrt;
    return sqrt(std::numeric_limits<Real>::min());
}

template <class Real>
void renormalize(Scaled<Real>& s) {
    using std::log;
    if (s.mantissa > big<Real>() || s.mantissa < small<Real>()) {
        s.log_scale += log(s.mantissa);
        s.mantissa = 1;
    }
}

// Above this argument the Hankel series for I_0 reaches full precision.
template <class Real>
Real large_x_threshold() {
    return Real(1.15) * Real(std::numeric_limits<Real>::digits10) + Real(10);
}

constexpr int kMaxIter = 100000;

template <class Real>
Scaled<Real> i_series(int n, const Real& x) {
    const Real half = x / 2;
    Scaled<Real> pre;
    for (int j = 1; j <= n; ++j) {
        pre.mantissa *= half / Real(j);
        renormalize(pre);
    }
    const Real q = half * half;
    Real term = 1, sum = 1;
    for (int k = 1;; ++k) {
        term *= q / (Real(k) * Real(n + k));
        sum += term;
        if (term < eps<Real>() * sum) break;
        if (k > kMaxIter) throw NonConvergence("I_n power series did not converge");
    }
    pre.mantissa *= sum;
    return pre;
}

// e^{-x} I_0(x) from the Hankel expansion; valid for large x.
template <class Real>
Real i0_scaled_asymptotic(const Real& x) {
    using std::sqrt;
    using boost::math::constants::pi;
    Real term = 1, sum = 1;
    for (int k = 1;; ++k) {
        const Real next = term * Real((2 * k - 1) * (2 * k - 1)) / (Real(8 * k) * x);
        if (next > term) throw NonConvergence("Hankel series diverged before convergence");
        term = next;
        sum += term;
        if (term < eps<Real>() * sum) break;
    }
    return sum / sqrt(2 * pi<Real>() * x);
}

// I_{n+1}(x)/I_n(x) by modified Lentz on the continued fraction
// 1/(2(n+1)/x + 1/(2(n+2)/x + ...)).
template <class Real>
Real i_ratio_cf(int n, const Real& x) {
    using std::fabs;
    const Real tiny = small<Real>();
    Real f = tiny, c = f, d = 0;
    for (int k = 1;; ++k) {
        const Real b = Real(2 * (n + k)) / x;
        d = b + d;
        if (d == 0) d = tiny;
        c = b + 1 / c;
        if (c == 0) c = tiny;
        d = 1 / d;
        const Real delta = c * d;
        f *= delta;
        if (fabs(delta - 1) < eps<Real>()) break;
        if (k > kMaxIter) throw NonConvergence("I_n continued fraction did not converge");
    }
    return f;
}

template <class Real>
Scaled<Real> i_large(int n, const Real& x) {
    using std::log;
    const Real i0s = i0_scaled_asymptotic(x);
    if (n == 0) return {i0s, x};
    // Backward recurrence i_{k-1} = (2k/x) i_k + i_{k+1}, seeded with i_n = 1.
    Real ik = 1, ikp1 = i_ratio_cf(n, x), shift = 0;
    for (int k = n; k >= 1; --k) {
        const Real ikm1 = Real(2 * k) / x * ik + ikp1;
        ikp1 = ik;
        ik = ikm1;
        if (ik > big<Real>()) {
            shift += log(ik);
            ikp1 /= ik;
            ik = 1;
        }
    }
    // ik now holds I_0 / I_n * exp(-shift).
    return {i0s / ik, x - shift};
}

template <class Real>
Scaled<Real> i_rep(int n, const Real& x) {
    if (x > large_x_threshold<Real>()) return i_large(n, x);
    return i_series(n, x);
}

// K_0 and K_1 at x, both sharing one log scale.
template <class Real>
void k01(const Real& x, Scaled<Real>& k0, Scaled<Real>& k1) {
    using std::exp;
    using std::fabs;
    using std::log;
    using std::sqrt;
    using boost::math::constants::euler;
    using boost::math::constants::pi;
    if (x <= 2) {
        const Real t = x * x / 4;
        const Real lg = log(x / 2);
        const Real g = euler<Real>();
        // K_0 = -(ln(x/2)+γ) I_0 + Σ H_k t^k/(k!)^2
        // K_1 = 1/x + ln(x/2) I_1 - (x/4) Σ (ψ(k+1)+ψ(k+2)) t^k/(k!(k+1)!)
        Real p0 = 1;  // t^k/(k!)^2
        Real p1 = 1;  // t^k/(k!(k+1)!)
        Real h = 0;   // H_k
        Real i0 = 1, i1 = 1, s0 = 0, s1 = -2 * g + 1;
        for (int k = 1;; ++k) {
            p0 *= t / (Real(k) * Real(k));
            p1 *= t / (Real(k) * Real(k + 1));
            h += Real(1) / Real(k);
            const Real hk1 = h + Real(1) / Real(k + 1);
            i0 += p0;
            i1 += p1;
            s0 += h * p0;
            const Real d1 = (h + hk1 - 2 * g) * p1;
            s1 += d1;
            if (p0 < eps<Real>() * i0 && fabs(d1) < eps<Real>() * fabs(s1) &&
                h * p0 < eps<Real>() * fabs(s0))
                break;
            if (k > kMaxIter) throw NonConvergence("K series did not converge");
        }
        i1 *= x / 2;
        k0 = {-(lg + g) * i0 + s0, Real(0)};
        k1 = {1 / x + lg * i1 - x / 4 * s1, Real(0)};
        return;
    }
    // Steed's method (CF2) for order 0, producing e^x K_0 and e^x K_1.
    Real b = 2 * (1 + x);
    Real d = 1 / b;
    Real h = d, delh = d;
    Real q1 = 0, q2 = 1;
    const Real a1 = Real(0.25);
    Real q = a1, c = a1, a = -a1;
    Real s = 1 + q * delh;
    for (int i = 2;; ++i) {
        a -= Real(2 * (i - 1));
        c = -a * c / Real(i);
        const Real qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2;
        d = 1 / (b + a * d);
        delh = (b * d - 1) * delh;
        h += delh;
        const Real dels = q * delh;
        s += dels;
        if (fabs(dels / s) < eps<Real>()) break;
        if (i > kMaxIter) throw NonConvergence("K continued fraction did not converge");
    }
    h = a1 * h;
    const Real k0s = sqrt(pi<Real>() / (2 * x)) / s;
    const Real k1s = k0s * (x + Real(0.5) - h) / x;
    k0 = {k0s, -x};
    k1 = {k1s, -x};
}

template <class Real>
std::vector<Scaled<Real>> k_sequence(int n_max, const Real& x) {
    using std::log;
    std::vector<Scaled<Real>> out(static_cast<std::size_t>(n_max) + 1);
    Scaled<Real> k0, k1;
    k01(x, k0, k1);
    out[0] = k0;
    if (n_max == 0) return out;
    out[1] = k1;
    // k01 returns both values on the same log scale.
    Real scale = k1.log_scale;
    Real km1 = k0.mantissa, k = k1.mantissa;
    for (int j = 1; j < n_max; ++j) {
        const Real kp1 = km1 + Real(2 * j) / x * k;
        km1 = k;
        k = kp1;
        if (k > big<Real>()) {
            const Real lk = log(k);
            scale += lk;
            km1 /= k;
            k = 1;
        }
        out[static_cast<std::size_t>(j) + 1] = {k, scale};
    }
    return out;
}

template <class Real>
Scaled<Real> k_rep(int n, const Real& x) {
    return k_sequence(n, x).back();
}

}  // namespace detail

/// I_n(x) as mantissa * exp(log_scale).
template <class Real>
Scaled<Real> bessel_i_rep(int n, Real x) {
    detail::check_args(n, x);
    return detail::i_rep(n, x);
}

/// K_n(x) as mantissa * exp(log_scale).
template <class Real>
Scaled<Real> bessel_k_rep(int n, Real x) {
    detail::check_args(n, x);
    return detail::k_rep(n, x);
}

/// K_0(x) ... K_{n_max}(x) from one recurrence.
template <class Real>
std::vector<Scaled<Real>> bessel_k_rep_sequence(int n_max, Real x) {
    detail::check_args(n_max, x);
    return detail::k_sequence(n_max, x);
}

template <class Real>
Real bessel_i(int n, Real x) {
    return bessel_i_rep(n, x).value();
}

template <class Real>
Real bessel_k(int n, Real x) {
    return bessel_k_rep(n, x).value();
}

/// e^{-x} I_n(x)
template <class Real>
Real bessel_i_scaled(int n, Real x) {
    auto r = bessel_i_rep(n, x);
    r.log_scale -= x;
    return r.value();
}

/// e^{x} K_n(x)
template <class Real>
Real bessel_k_scaled(int n, Real x) {
    auto r = bessel_k_rep(n, x);
    r.log_scale += x;
    return r.value();
}

template <class Real>
Real log_bessel_i(int n, Real x) {
    return bessel_i_rep(n, x).log();
}

template <class Real>
Real log_bessel_k(int n, Real x) {
    return bessel_k_rep(n, x).log();
}

/// I_{n+1}(x) / I_n(x)
template <class Real>
Real bessel_i_ratio(int n, Real x) {
    detail::check_args(n, x);
    return detail::i_ratio_cf(n, x);
}

/// I'_n(x) = (I_{n-1}(x) + I_{n+1}(x))/2, I'_0 = I_1.
template <class Real>
Real bessel_i_prime(int n, Real x) {
    detail::check_args(n, x);
    if (n == 0) return bessel_i(1, x);
    return (bessel_i(n - 1, x) + bessel_i(n + 1, x)) / 2;
}

/// K'_n(x) = -(K_{n-1}(x) + K_{n+1}(x))/2, K'_0 = -K_1.
template <class Real>
Real bessel_k_prime(int n, Real x) {
    detail::check_args(n, x);
    if (n == 0) return -bessel_k(1, x);
    const auto seq = detail::k_sequence(n + 1, x);
    return -(seq[static_cast<std::size_t>(n) - 1].value() + seq[static_cast<std::size_t>(n) + 1].value()) / 2;
}

/// I'_n(x) / I_n(x), computed without forming either factor.
template <class Real>
Real bessel_i_log_derivative(int n, Real x) {
    detail::check_args(n, x);
    // I'_n/I_n = n/x + I_{n+1}/I_n
    return Real(n) / x + detail::i_ratio_cf(n, x);
}

}  // namespace mfs::specfun
