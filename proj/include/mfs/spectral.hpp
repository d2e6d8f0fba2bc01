#pragma once

// Fourier–Bessel machinery for the disk problem.
//
//   a_n   Fourier coefficients of S(θ)
//   g     exact solution Σ I_n(αr)/(α I'_n(αR)) a_n e^{inθ}
//   A_n   (1+n) K_{n+1}(αρ) I_{n+1}(αR)
//   Ã_n   Σ_{r≥0} (A_{|n−1|+2r} + A_{|n+1|+2r} − (2R/ρ) A_{|n|+2r}),  c(θ) = (1/R) Σ Ã_n e^{inθ}
//   f(ω^m) = (N/R) Σ_l Ã_{lN+m}
//   φ_n   α(1 + |n|/(αR)) (R/r₀)^{|n|}
//
// Infinite sums stop once five consecutive terms fall below tail_tol·|partial sum|.

#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mfs/dft.hpp"
#include "mfs/errors.hpp"
#include "mfs/problem.hpp"
#include "mfs/specfun.hpp"

namespace mfs {

inline constexpr double kDefaultTailTol = 1e-14;
inline constexpr int kMaxSeriesTerms = 1000;

namespace detail {

/// Stopping rule shared by every truncated series.
class TailRule {
public:
    explicit TailRule(double tol) : tol_(tol) {}

    /// Feed |term| and |partial| after adding it; true once the series may stop.
    bool done(double abs_term, double abs_partial) {
        if (abs_term < tol_ * abs_partial) {
            ++quiet_;
        } else {
            quiet_ = 0;
        }
        return quiet_ >= 5;
    }

private:
    double tol_;
    int quiet_ = 0;
};

inline int wrap(long long n, long long N) { return static_cast<int>(((n % N) + N) % N); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Fourier coefficients of the boundary data

/// a_n for −n_max ≤ n ≤ n_max.
struct FourierSeries {
    int n_max = 0;
    std::vector<std::complex<double>> coeff;  // index n + n_max

    std::complex<double> at(int n) const {
        if (n < -n_max || n > n_max) return 0.0;
        return coeff[static_cast<std::size_t>(n + n_max)];
    }
};

/// All a_n with |n| ≤ n_max from an M-point trapezoidal rule; requires n_max ≤ M/4.
inline FourierSeries fourier_series(const BoundaryData& bd, double R, int n_max, int quad_points) {
    if (n_max < 0) throw DomainError("fourier_series: n_max must be >= 0");
    if (4 * n_max > quad_points)
        throw DomainError("fourier_series: |n| = " + std::to_string(n_max) + " exceeds quad_points/4 = " +
                          std::to_string(quad_points / 4) + " (aliasing)");
    const auto theta = collocation_angles<double>(quad_points);
    std::vector<double> s(theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j) s[j] = boundary_value(bd, R, theta[j]);
    const auto t = dft::transform_real<double>(std::span<const double>(s), -1);
    FourierSeries out;
    out.n_max = n_max;
    out.coeff.resize(static_cast<std::size_t>(2 * n_max + 1));
    for (int n = -n_max; n <= n_max; ++n)
        out.coeff[static_cast<std::size_t>(n + n_max)] = t[static_cast<std::size_t>(detail::wrap(n, quad_points))] / double(quad_points);
    return out;
}

inline FourierSeries fourier_series(const ProblemSpec& s, int n_max, int quad_points) {
    return fourier_series(s.boundary, s.R, n_max, quad_points);
}

/// a_n = (1/2π)∫ S(θ) e^{−inθ} dθ by the M-point trapezoidal rule; requires |n| ≤ M/4.
inline std::complex<double> fourier_a(const BoundaryData& bd, double R, int n, int quad_points) {
    if (4 * std::abs(n) > quad_points)
        throw DomainError("fourier_a: |n| = " + std::to_string(n) + " exceeds quad_points/4 (aliasing)");
    const auto theta = collocation_angles<double>(quad_points);
    const auto w = dft::twiddles<double>(static_cast<std::size_t>(quad_points));
    std::complex<double> acc = 0;
    for (int j = 0; j < quad_points; ++j) {
        const int k = detail::wrap(-static_cast<long long>(n) * j, quad_points);
        acc += boundary_value(bd, R, theta[static_cast<std::size_t>(j)]) * w[static_cast<std::size_t>(k)];
    }
    return acc / double(quad_points);
}

/// ŝ_n = (1/N) Σ_l s_l ω^{−nl}; N-periodic in n.
inline std::complex<double> hat_s(std::span<const double> samples, int n) {
    const int N = static_cast<int>(samples.size());
    if (N < 1) throw DomainError("hat_s: empty sample vector");
    const auto w = dft::twiddles<double>(static_cast<std::size_t>(N));
    std::complex<double> acc = 0;
    for (int l = 0; l < N; ++l)
        acc += samples[static_cast<std::size_t>(l)] * w[static_cast<std::size_t>(detail::wrap(-static_cast<long long>(n) * l, N))];
    return acc / double(N);
}

// ---------------------------------------------------------------------------
// Exact solution

struct FieldValue {
    double value = 0;
    std::complex<double> gradient = 0;  // ∂_x g + i ∂_y g
    int terms = 0;
    bool truncation_warning = false;
};

/// Evaluator for g(re^{iθ}) = Σ_n I_n(αr)/(α I'_n(αR)) a_n e^{inθ}.
class ExactSolution {
public:
    static constexpr int kMaxOrder = 256;

    ExactSolution(double R, double alpha, FourierSeries a, double tail_tol = kDefaultTailTol)
        : R_(R), alpha_(alpha), a_(std::move(a)), tail_tol_(tail_tol) {
        if (!(R > 0) || !(alpha > 0)) throw DomainError("ExactSolution: R and alpha must be > 0");
        cap_ = std::min(a_.n_max, kMaxOrder);
        const double x = alpha * R;
        log_i_R_.resize(static_cast<std::size_t>(cap_) + 1);
        dlog_i_R_.resize(static_cast<std::size_t>(cap_) + 1);
        for (int n = 0; n <= cap_; ++n) {
            log_i_R_[static_cast<std::size_t>(n)] = specfun::log_bessel_i(n, x);
            dlog_i_R_[static_cast<std::size_t>(n)] = specfun::bessel_i_log_derivative(n, x);
        }
    }

    ExactSolution(const ProblemSpec& s, FourierSeries a, double tail_tol = kDefaultTailTol)
        : ExactSolution(s.R, s.alpha, std::move(a), tail_tol) {}

    FieldValue evaluate(double r, double theta) const {
        if (!(r >= 0) || r > R_ * (1 + 1e-12)) throw DomainError("ExactSolution: r outside [0, R]");
        FieldValue out;
        if (r == 0) return at_origin();
        const double x = alpha_ * r;
        double g = 0, gr = 0, gt = 0, mag = 0;
        detail::TailRule rule(tail_tol_);
        double last = 0;
        for (int n = 0; n <= cap_; ++n) {
            const std::complex<double> an = a_.at(n);
            // F_n(r) = I_n(αr)/(α I'_n(αR)),  F_n'(r) = α F_n(r) I'_n(αr)/I_n(αr)
            const double F = std::exp(specfun::log_bessel_i(n, x) - log_i_R_[static_cast<std::size_t>(n)]) /
                             (alpha_ * dlog_i_R_[static_cast<std::size_t>(n)]);
            const double Fr = alpha_ * F * specfun::bessel_i_log_derivative(n, x);
            const std::complex<double> e = an * std::polar(1.0, n * theta);
            const double w = n == 0 ? 1.0 : 2.0;
            g += w * F * e.real();
            gr += w * Fr * e.real();
            gt += w * F * (-n * e.imag());
            last = w * std::max(F, Fr * R_) * std::abs(an);
            mag += last;
            out.terms = n + 1;
            if (rule.done(last, mag)) break;
        }
        out.truncation_warning = out.terms == cap_ + 1 && last > tail_tol_ * std::max(mag, 1e-300);
        const double c = std::cos(theta), s = std::sin(theta);
        out.value = g;
        out.gradient = {c * gr - s * gt / r, s * gr + c * gt / r};
        return out;
    }

    double operator()(double r, double theta) const { return evaluate(r, theta).value; }

    /// ∂g/∂r at (r, θ).
    double radial_derivative(double r, double theta) const {
        const auto f = evaluate(r, theta);
        return f.gradient.real() * std::cos(theta) + f.gradient.imag() * std::sin(theta);
    }

    int order_cap() const { return cap_; }

private:
    FieldValue at_origin() const {
        FieldValue out;
        out.value = a_.at(0).real() / (alpha_ * std::exp(log_i_R_[0]) * dlog_i_R_[0]);
        if (cap_ >= 1) {
            // F_1(r) ≈ (αr/2)/(α I'_1(αR)) near the origin.
            const double ip1 = std::exp(log_i_R_[1]) * dlog_i_R_[1];
            const std::complex<double> a1 = a_.at(1);
            out.gradient = {a1.real() / ip1, -a1.imag() / ip1};
        }
        out.terms = 2;
        return out;
    }

    double R_, alpha_;
    FourierSeries a_;
    double tail_tol_;
    int cap_ = 0;
    std::vector<double> log_i_R_, dlog_i_R_;
};

inline double exact_solution(const ProblemSpec& s, const FourierSeries& a, double r, double theta,
                             std::vector<std::string>* warnings = nullptr) {
    const ExactSolution g(s, a);
    const auto f = g.evaluate(r, theta);
    if (f.truncation_warning && warnings)
        warnings->push_back("exact solution truncated at |n| = " + std::to_string(f.terms - 1) +
                            " with the last term above tail_tol");
    return f.value;
}

// ---------------------------------------------------------------------------
// A_n, Ã_n, φ_n

/// A_n for n = 0..count−1.  Values below the smallest normal double are stored as 0.
template <class Real>
std::vector<Real> coeff_A_sequence(const Geometry<Real>& g, int count) {
    if (count <= 0) return {};
    const auto K = specfun::bessel_k_rep_sequence(count, g.alpha * g.rho);
    std::vector<Real> A(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n) {
        auto p = K[static_cast<std::size_t>(n) + 1] * specfun::bessel_i_rep(n + 1, g.alpha * g.R);
        p.mantissa *= Real(n + 1);
        try {
            A[static_cast<std::size_t>(n)] = p.value();
        } catch (const UnderflowError&) {
            A[static_cast<std::size_t>(n)] = 0;
        }
    }
    return A;
}

inline double coeff_A(const ProblemSpec& s, int n) {
    if (n < 0) throw DomainError("coeff_A requires n >= 0");
    auto p = specfun::bessel_k_rep(n + 1, s.alpha * s.rho) * specfun::bessel_i_rep(n + 1, s.alpha * s.R);
    p.mantissa *= double(n + 1);
    return p.value();
}

struct CoefficientTable {
    double R = 1, alpha = 1, rho = 2;
    double tail_tol = kDefaultTailTol;
    int n_max = 0;
    std::vector<double> A;        // A_0 .. (at least n_max + 1)
    std::vector<double> A_tilde;  // Ã_0 .. Ã_{n_max}
    std::optional<double> r0;
    std::vector<double> phi;      // φ_0 .. φ_{n_max} when r0 is set

    double A_at(int n) const {
        if (n < 0 || n >= static_cast<int>(A.size())) throw DomainError("A_" + std::to_string(n) + " not in table");
        return A[static_cast<std::size_t>(n)];
    }
    double A_tilde_at(int n) const {
        const int k = std::abs(n);
        if (k > n_max) throw DomainError("coefficient table too short for index " + std::to_string(n));
        return A_tilde[static_cast<std::size_t>(k)];
    }
    double phi_at(int n) const {
        const int k = std::abs(n);
        if (!r0 || k > n_max) throw DomainError("phi_" + std::to_string(n) + " not in table");
        return phi[static_cast<std::size_t>(k)];
    }
};

namespace detail {

class ATildeBuilder {
public:
    ATildeBuilder(const Geometry<double>& g, double tol, int initial) : g_(g), tol_(tol) {
        A_ = coeff_A_sequence(g_, std::max(initial, 8));
    }

    double A(int k) {
        if (k >= static_cast<int>(A_.size())) A_ = coeff_A_sequence(g_, std::max(2 * static_cast<int>(A_.size()), k + 1));
        return A_[static_cast<std::size_t>(k)];
    }

    double A_tilde(int n) {
        n = std::abs(n);
        const double q = 2 * g_.R / g_.rho;
        double sum = 0;
        TailRule rule(tol_);
        for (int r = 0; r < kMaxSeriesTerms; ++r) {
            const double term = A(std::abs(n - 1) + 2 * r) + A(n + 1 + 2 * r) - q * A(n + 2 * r);
            sum += term;
            if (rule.done(std::abs(term), std::abs(sum))) return sum;
        }
        throw NonConvergence("A_tilde_" + std::to_string(n) + " did not meet the stopping rule in " +
                             std::to_string(kMaxSeriesTerms) + " terms");
    }

    const std::vector<double>& A_values() const { return A_; }

private:
    Geometry<double> g_;
    double tol_;
    std::vector<double> A_;
};

}  // namespace detail

inline double phi(double R, double alpha, double r0, int n) {
    if (!(r0 > R)) throw DomainError("phi requires r0 > R");
    const int k = std::abs(n);
    return alpha * (1 + k / (alpha * R)) * std::pow(R / r0, k);
}

inline double phi(const ProblemSpec& s, double r0, int n) { return phi(s.R, s.alpha, r0, n); }

inline CoefficientTable make_coefficient_table(const Geometry<double>& g, int n_max, double tail_tol = kDefaultTailTol,
                                               std::optional<double> r0 = std::nullopt) {
    if (n_max < 0) throw DomainError("make_coefficient_table: n_max must be >= 0");
    if (!(g.rho > g.R)) throw DomainError("make_coefficient_table: rho must exceed R");
    detail::ATildeBuilder b(g, tail_tol, n_max + 64);
    CoefficientTable t;
    t.R = g.R;
    t.alpha = g.alpha;
    t.rho = g.rho;
    t.tail_tol = tail_tol;
    t.n_max = n_max;
    t.A_tilde.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) t.A_tilde[static_cast<std::size_t>(n)] = b.A_tilde(n);
    t.A = b.A_values();
    if (r0) {
        t.r0 = r0;
        t.phi.resize(static_cast<std::size_t>(n_max) + 1);
        for (int n = 0; n <= n_max; ++n) t.phi[static_cast<std::size_t>(n)] = phi(g.R, g.alpha, *r0, n);
    }
    return t;
}

inline CoefficientTable make_coefficient_table(const ProblemSpec& s, int n_max, double tail_tol = kDefaultTailTol,
                                               std::optional<double> r0 = std::nullopt) {
    return make_coefficient_table(s.geometry(), n_max, tail_tol, r0);
}

inline double coeff_A_tilde(const ProblemSpec& s, int n, double tail_tol = kDefaultTailTol) {
    detail::ATildeBuilder b(s.geometry(), tail_tol, std::abs(n) + 64);
    return b.A_tilde(n);
}

/// Table order that lets lattice sums over period N reach |n| ≤ n_max.
inline int lattice_table_order(const Geometry<double>& g, int N, int n_max, double tail_tol = kDefaultTailTol) {
    const double decay = std::log(g.R / g.rho);
    const int extra = static_cast<int>(std::ceil(std::log(tail_tol) / decay)) + 6 * N + 8;
    return std::abs(n_max) + N + extra;
}

/// Σ_l Ã_{lN+n} (l ≠ 0 when exclude_zero).
inline double lattice_sum(const CoefficientTable& t, int N, int n, bool exclude_zero = false) {
    // The full sum is N-periodic in n; summing about the reduced index keeps the
    // table lookups within |n| + O(N) of the origin.
    const int r = ((n % N) + N + N / 2) % N - N / 2;
    if (r != n) {
        const double full = lattice_sum(t, N, r, false);
        return exclude_zero ? full - t.A_tilde_at(n) : full;
    }
    double sum = exclude_zero ? 0.0 : t.A_tilde_at(n);
    double scale = std::abs(t.A_tilde_at(n));
    detail::TailRule rule(t.tail_tol);
    for (int l = 1; l <= kMaxSeriesTerms; ++l) {
        const double term = t.A_tilde_at(l * N + n) + t.A_tilde_at(-l * N + n);
        sum += term;
        scale = std::max(scale, std::abs(sum));
        if (rule.done(std::abs(term), scale)) return sum;
    }
    throw NonConvergence("lattice sum did not converge");
}

/// Σ_l a_{lN+n} (l ≠ 0 when exclude_zero); coefficients beyond a.n_max count as 0.
inline std::complex<double> lattice_sum(const FourierSeries& a, int N, int n, bool exclude_zero = false) {
    std::complex<double> sum = exclude_zero ? 0.0 : a.at(n);
    for (int l = 1; l * N - std::abs(n) <= a.n_max; ++l) sum += a.at(l * N + n) + a.at(-l * N + n);
    return sum;
}

/// f(ω^m) = (N/R) Σ_l Ã_{lN+m}.
inline double eigenvalue_series(const CoefficientTable& t, int N, int m) {
    return N / t.R * lattice_sum(t, N, m);
}

inline double eigenvalue_series(const ProblemSpec& s, int m, double tail_tol = kDefaultTailTol) {
    if (m < 0 || m >= s.N) throw DomainError("eigenvalue_series: m outside [0, N-1]");
    const auto t = make_coefficient_table(s, lattice_table_order(s.geometry(), s.N, m, tail_tol), tail_tol);
    return eigenvalue_series(t, s.N, m);
}

/// Closed-form constants from the coefficient estimates.
struct BoundConstants {
    double C4 = 0, C5 = 0, C6 = 0, C7 = 0;
    std::optional<double> C8, C9;
};

/// C5 = 1 − sup_n (R/ρ)A_n/A_{n−1} (sup over the stored A_n and the limit (R/ρ)²),
/// C4 = min{C5 e^{−α(ρ+R)}/2, Ã_0}, C6 = (e^{αR}/2)(ρ²+R²)/(ρ²−R²), C7 = C6 ρ/(ρ−R),
/// C8 = (r₀/(r₀−R))²(1 + 2/(αR)), C9 = 2(1 − R/r₀)^{−2}.
inline BoundConstants bound_constants(const CoefficientTable& t, std::optional<double> r0 = std::nullopt) {
    BoundConstants c;
    const double q = t.R / t.rho;
    double sup = q * q;
    for (std::size_t n = 1; n < t.A.size(); ++n)
        if (t.A[n] > 0 && t.A[n - 1] > 0) sup = std::max(sup, q * t.A[n] / t.A[n - 1]);
    c.C5 = 1 - sup;
    c.C4 = std::min(c.C5 * std::exp(-t.alpha * (t.rho + t.R)) / 2, t.A_tilde_at(0));
    c.C6 = std::exp(t.alpha * t.R) / 2 * (t.rho * t.rho + t.R * t.R) / (t.rho * t.rho - t.R * t.R);
    c.C7 = c.C6 * t.rho / (t.rho - t.R);
    if (!r0) r0 = t.r0;
    if (r0) {
        if (!(*r0 > t.R)) throw DomainError("bound_constants requires r0 > R");
        const double k = *r0 / (*r0 - t.R);
        c.C8 = k * k * (1 + 2 / (t.alpha * t.R));
        c.C9 = 2 / ((1 - t.R / *r0) * (1 - t.R / *r0));
    }
    return c;
}

}  // namespace mfs
