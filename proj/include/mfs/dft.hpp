#pragma once

// Discrete Fourier transforms with exactly indexed twiddle factors.
//   transform(x, +1)[m] = Σ_l x_l ω^{ml},   ω = e^{2πi/N}
//   transform(x, −1)[m] = Σ_l x_l ω^{−ml}
// Direct O(N²) summation, radix-2 FFT when N is a power of two.

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mfs::dft {

inline bool is_power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

/// ω^k for k = 0..N−1.
template <class Real>
std::vector<std::complex<Real>> twiddles(std::size_t N) {
    using std::cos;
    using std::sin;
    using boost::math::constants::two_pi;
    std::vector<std::complex<Real>> w(N);
    for (std::size_t k = 0; k < N; ++k) {
        // Keep w[N-k] == conj(w[k]) exactly.
        if (2 * k > N) {
            w[k] = std::conj(w[N - k]);
            continue;
        }
        if (2 * k == N) {
            w[k] = std::complex<Real>(Real(-1), Real(0));
            continue;
        }
        const Real a = two_pi<Real>() * Real(static_cast<long long>(k)) / Real(static_cast<long long>(N));
        w[k] = std::complex<Real>(cos(a), sin(a));
    }
    return w;
}

template <class Real>
std::vector<std::complex<Real>> direct(std::span<const std::complex<Real>> x, int sign) {
    const std::size_t N = x.size();
    const auto w = twiddles<Real>(N);
    std::vector<std::complex<Real>> out(N);
    for (std::size_t m = 0; m < N; ++m) {
        Real re = 0, im = 0;
        for (std::size_t l = 0; l < N; ++l) {
            std::size_t k = (m * l) % N;
            if (sign < 0 && k != 0) k = N - k;
            const auto& t = w[k];
            re += x[l].real() * t.real() - x[l].imag() * t.imag();
            im += x[l].real() * t.imag() + x[l].imag() * t.real();
        }
        out[m] = std::complex<Real>(re, im);
    }
    return out;
}

template <class Real>
std::vector<std::complex<Real>> fft(std::span<const std::complex<Real>> x, int sign) {
    const std::size_t N = x.size();
    std::vector<std::complex<Real>> a(x.begin(), x.end());
    for (std::size_t i = 1, j = 0; i < N; ++i) {
        std::size_t bit = N >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const auto w = twiddles<Real>(N);
    for (std::size_t len = 2; len <= N; len <<= 1) {
        const std::size_t stride = N / len;
        for (std::size_t i = 0; i < N; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::size_t k = j * stride;
                if (sign < 0 && k != 0) k = N - k;
                const auto& t = w[k];
                const auto& v = a[i + j + len / 2];
                const std::complex<Real> tv{v.real() * t.real() - v.imag() * t.imag(),
                                            v.real() * t.imag() + v.imag() * t.real()};
                const auto u = a[i + j];
                a[i + j] = std::complex<Real>(u.real() + tv.real(), u.imag() + tv.imag());
                a[i + j + len / 2] = std::complex<Real>(u.real() - tv.real(), u.imag() - tv.imag());
            }
        }
    }
    return a;
}

template <class Real>
std::vector<std::complex<Real>> transform(std::span<const std::complex<Real>> x, int sign) {
    if (is_power_of_two(x.size()) && x.size() >= 2) return fft<Real>(x, sign);
    return direct<Real>(x, sign);
}

template <class Real>
std::vector<std::complex<Real>> transform_real(std::span<const Real> x, int sign) {
    std::vector<std::complex<Real>> z;
    z.reserve(x.size());
    for (const auto& v : x) z.emplace_back(v, Real(0));
    return transform<Real>(std::span<const std::complex<Real>>(z), sign);
}

}  // namespace mfs::dft
