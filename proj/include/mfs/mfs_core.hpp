#pragma once

// Collocation system of the method of fundamental solutions on the disk.
//
// g_N(x) = Σ_k Q_k K_0(α|x − y_k|),  y_k = ρω^k,  collocation at x_j = Rω^j.
// The Neumann conditions give the circulant system C Q = S with
// C[i][j] = c_{(j−i) mod N} and c_l = c(2πl/N), where
//   c(θ) = −α K_1(α d(θ)) (R − ρ cos θ)/d(θ),   d(θ) = √(R² + ρ² − 2Rρ cos θ).
// C has eigenvalues f(ω^m) = Σ_l c_l ω^{ml} and inverse circulant(b) with
//   b_k = (1/N) Σ_m ω^{−mk} / f(ω^m),   Q_k = Σ_l s_l b_{(l−k) mod N}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "mfs/dft.hpp"
#include "mfs/errors.hpp"
#include "mfs/problem.hpp"
#include "mfs/specfun.hpp"

namespace mfs {

template <class Real>
Real kernel_distance(const Geometry<Real>& g, Real theta) {
    using std::cos;
    using std::sqrt;
    return sqrt(g.R * g.R + g.rho * g.rho - 2 * g.R * g.rho * cos(theta));
}

/// c(θ): normal derivative at Re^{iθ} of K_0(α|x − ρ|).
template <class Real>
Real kernel_c(const Geometry<Real>& g, Real theta) {
    using std::cos;
    const Real d = kernel_distance(g, theta);
    return -g.alpha * specfun::bessel_k(1, g.alpha * d) * (g.R - g.rho * cos(theta)) / d;
}

/// c_l = c(2πl/N), l = 0..N−1, with c_l = c_{N−l} enforced exactly.
template <class Real>
std::vector<Real> assemble_c(const Geometry<Real>& g, int N) {
    const auto theta = collocation_angles<Real>(N);
    std::vector<Real> c(static_cast<std::size_t>(N));
    for (int l = 0; 2 * l <= N; ++l) c[static_cast<std::size_t>(l)] = kernel_c(g, theta[static_cast<std::size_t>(l)]);
    for (int l = N / 2 + 1; l < N; ++l) c[static_cast<std::size_t>(l)] = c[static_cast<std::size_t>(N - l)];
    return c;
}

inline std::vector<double> assemble_c(const ProblemSpec& s) { return assemble_c(s.geometry(), s.N); }

/// f(ω^m) = Σ_l c_l ω^{ml}, m = 0..N−1.
template <class Real>
std::vector<std::complex<Real>> eigenvalues_dft(std::span<const Real> c) {
    if (c.size() < 2) throw DomainError("eigenvalues_dft needs N >= 2");
    return dft::transform_real<Real>(c, +1);
}

template <class Real>
std::vector<std::complex<Real>> eigenvalues_dft(const std::vector<Real>& c) {
    return eigenvalues_dft(std::span<const Real>(c));
}

/// Eigenvalues of a symmetric circulant (c_l = c_{N−l}) as a cosine sum.
/// Only m ≤ N/2 is summed; the rest follow from f(ω^m) = f(ω^{N−m}).
template <class Real>
std::vector<Real> eigenvalues_symmetric(std::span<const Real> c) {
    using std::cos;
    using boost::math::constants::two_pi;
    const std::size_t N = c.size();
    if (N < 2) throw DomainError("eigenvalues_symmetric needs N >= 2");
    for (std::size_t l = 1; l < N; ++l)
        if (c[l] != c[N - l]) throw DomainError("eigenvalues_symmetric needs c_l == c_{N-l}");
    std::vector<Real> cs(N);
    for (std::size_t k = 0; 2 * k <= N; ++k) {
        cs[k] = cos(two_pi<Real>() * Real(static_cast<long long>(k)) / Real(static_cast<long long>(N)));
        if (k > 0) cs[N - k] = cs[k];
    }
    std::vector<Real> f(N);
    for (std::size_t m = 0; 2 * m <= N; ++m) {
        Real s = c[0];
        for (std::size_t l = 1; 2 * l < N; ++l) s += 2 * c[l] * cs[(m * l) % N];
        if (N % 2 == 0) s += (m % 2 == 0 ? c[N / 2] : -c[N / 2]);
        f[m] = s;
        if (m > 0) f[N - m] = s;
    }
    return f;
}

template <class Real>
std::vector<Real> eigenvalues_symmetric(const std::vector<Real>& c) {
    return eigenvalues_symmetric(std::span<const Real>(c));
}

namespace detail {

template <class Real>
Real modulus(const std::complex<Real>& z) {
    using std::sqrt;
    return sqrt(z.real() * z.real() + z.imag() * z.imag());
}

template <class Real>
void check_nonsingular(std::span<const std::complex<Real>> eig, Real rel_tol) {
    Real fmax = 0;
    for (const auto& f : eig) fmax = std::max(fmax, modulus(f));
    for (std::size_t m = 0; m < eig.size(); ++m)
        if (!(modulus(eig[m]) > rel_tol * fmax))
            throw SingularSystem(static_cast<int>(m),
                                 "circulant eigenvalue f(w^" + std::to_string(m) + ") is below the singularity tolerance");
}

}  // namespace detail

/// Default singularity tolerance relative to max|f|.
inline constexpr double kSingularTol = 1e-13;

/// First row b of C^{-1}: b_k = (1/N) Σ_m ω^{−mk}/f(ω^m).
template <class Real>
std::vector<Real> circulant_inverse(std::span<const Real> c, std::span<const std::complex<Real>> eig,
                                    Real rel_tol = Real(kSingularTol)) {
    const std::size_t N = c.size();
    if (eig.size() != N) throw DomainError("circulant_inverse: eigenvalue count differs from N");
    detail::check_nonsingular(eig, rel_tol);
    std::vector<std::complex<Real>> inv(N);
    for (std::size_t m = 0; m < N; ++m) {
        const Real d = eig[m].real() * eig[m].real() + eig[m].imag() * eig[m].imag();
        inv[m] = std::complex<Real>(eig[m].real() / d, -eig[m].imag() / d);
    }
    const auto t = dft::transform<Real>(std::span<const std::complex<Real>>(inv), -1);
    std::vector<Real> b(N);
    for (std::size_t k = 0; k < N; ++k) b[k] = t[k].real() / Real(static_cast<long long>(N));
    return b;
}

template <class Real>
std::vector<Real> circulant_inverse(const std::vector<Real>& c, const std::vector<std::complex<Real>>& eig,
                                    Real rel_tol = Real(kSingularTol)) {
    return circulant_inverse(std::span<const Real>(c), std::span<const std::complex<Real>>(eig), rel_tol);
}

/// (C x)_i = Σ_j c_{(j−i) mod N} x_j
template <class Real>
std::vector<Real> circulant_apply(std::span<const Real> c, std::span<const Real> x) {
    const std::size_t N = c.size();
    std::vector<Real> y(N);
    for (std::size_t i = 0; i < N; ++i) {
        Real s = 0;
        for (std::size_t j = 0; j < N; ++j) s += c[(j + N - i) % N] * x[j];
        y[i] = s;
    }
    return y;
}

/// Q_k = Σ_l s_l b_{(l−k) mod N}
template <class Real>
std::vector<Real> charges_convolution(std::span<const Real> b, std::span<const Real> s) {
    return circulant_apply(b, s);
}

/// Q = Σ_m (ŝ_m / f(ω^m)) ω^{mk}, ŝ_m = (1/N) Σ_l s_l ω^{−ml}.
template <class Real>
std::vector<Real> charges_eigenspace(std::span<const std::complex<Real>> eig, std::span<const Real> s,
                                     Real rel_tol = Real(kSingularTol)) {
    const std::size_t N = s.size();
    detail::check_nonsingular(eig, rel_tol);
    auto sh = dft::transform_real<Real>(s, -1);
    for (std::size_t m = 0; m < N; ++m) {
        const auto& f = eig[m];
        const Real d = f.real() * f.real() + f.imag() * f.imag();
        const Real re = (sh[m].real() * f.real() + sh[m].imag() * f.imag()) / d;
        const Real im = (sh[m].imag() * f.real() - sh[m].real() * f.imag()) / d;
        sh[m] = std::complex<Real>(re, im);
    }
    const auto q = dft::transform<Real>(std::span<const std::complex<Real>>(sh), +1);
    std::vector<Real> out(N);
    for (std::size_t k = 0; k < N; ++k) out[k] = q[k].real() / Real(static_cast<long long>(N));
    return out;
}

template <class Real>
struct CirculantSystem {
    std::vector<Real> c;
    std::vector<std::complex<Real>> eigenvalues;
    std::vector<Real> b;

    Real min_eigenvalue() const {
        Real m = eigenvalues.front().real();
        for (const auto& f : eigenvalues) m = std::min(m, f.real());
        return m;
    }
    Real max_eigenvalue() const {
        Real m = eigenvalues.front().real();
        for (const auto& f : eigenvalues) m = std::max(m, f.real());
        return m;
    }
};

template <class Real>
CirculantSystem<Real> make_circulant_system(const Geometry<Real>& g, int N) {
    CirculantSystem<Real> sys;
    sys.c = assemble_c(g, N);
    sys.eigenvalues = eigenvalues_dft(sys.c);
    sys.b = circulant_inverse(sys.c, sys.eigenvalues);
    return sys;
}

struct MfsSolution {
    ProblemSpec spec;
    std::vector<double> Q;
    PointLayout layout;
    CirculantSystem<double> system;
    std::vector<double> S;
    /// max_k |Q_k(eigenspace) − Q_k(convolution)| / max_k |Q_k|
    double path_discrepancy = 0;

    Geometry<double> geometry() const { return spec.geometry(); }
};

inline MfsSolution solve_charges(const ProblemSpec& spec) {
    MfsSolution sol;
    sol.spec = spec;
    sol.layout = layout(spec);
    sol.system = make_circulant_system(spec.geometry(), spec.N);
    sol.S = boundary_rhs(spec);
    // The eigenspace path keeps rounding error of each mode in that mode; the
    // b convolution spreads eps/min|f| into every mode, which shows up in g_N
    // once the true error drops below ~1e-11.  It is kept as a cross-check.
    sol.Q = charges_eigenspace<double>(sol.system.eigenvalues, sol.S);
    const auto Qc = charges_convolution<double>(sol.system.b, sol.S);
    double diff = 0, scale = 0;
    for (std::size_t k = 0; k < sol.Q.size(); ++k) {
        diff = std::max(diff, std::abs(sol.Q[k] - Qc[k]));
        scale = std::max(scale, std::abs(sol.Q[k]));
    }
    sol.path_discrepancy = scale > 0 ? diff / scale : diff;
    return sol;
}

/// max_j |(C Q)_j − s_j|
inline double residual(const MfsSolution& sol) {
    const auto cq = circulant_apply<double>(sol.system.c, sol.Q);
    double r = 0;
    for (std::size_t j = 0; j < cq.size(); ++j) r = std::max(r, std::abs(cq[j] - sol.S[j]));
    return r;
}

namespace detail {

inline void check_inside(const MfsSolution& sol, std::complex<double> x) {
    if (!(std::abs(x) <= sol.spec.R * (1 + 1e-12)))
        throw DomainError("evaluation point lies outside the closed disk");
}

}  // namespace detail

/// g_N(x) = Σ_k Q_k K_0(α|x − y_k|), |x| ≤ R.
inline double eval_gN(const MfsSolution& sol, std::complex<double> x) {
    detail::check_inside(sol, x);
    double v = 0;
    for (std::size_t k = 0; k < sol.Q.size(); ++k) {
        if (sol.Q[k] == 0) continue;
        v += sol.Q[k] * specfun::bessel_k(0, sol.spec.alpha * std::abs(x - sol.layout.charge_points[k]));
    }
    return v;
}

/// ∇g_N(x) returned as ∂_x g + i ∂_y g.
inline std::complex<double> eval_gN_gradient(const MfsSolution& sol, std::complex<double> x) {
    detail::check_inside(sol, x);
    std::complex<double> g = 0;
    for (std::size_t k = 0; k < sol.Q.size(); ++k) {
        if (sol.Q[k] == 0) continue;
        const auto d = x - sol.layout.charge_points[k];
        const double r = std::abs(d);
        g += -sol.Q[k] * sol.spec.alpha * specfun::bessel_k(1, sol.spec.alpha * r) * d / r;
    }
    return g;
}

/// ∂g_N/∂n at Re^{iθ}: Σ_k Q_k c(θ − θ_k).
inline double eval_gN_normal_deriv(const MfsSolution& sol, double theta) {
    const auto g = sol.geometry();
    double v = 0;
    for (std::size_t k = 0; k < sol.Q.size(); ++k) {
        if (sol.Q[k] == 0) continue;
        v += sol.Q[k] * kernel_c(g, theta - sol.layout.theta[k]);
    }
    return v;
}

}  // namespace mfs
