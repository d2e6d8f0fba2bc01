#pragma once

// A-posteriori bound F(N) = C3 (‖∂h_N/∂n‖² + ‖∂h_{N,x}/∂n‖² + ‖∂h_{N,y}/∂n‖²)
// on ‖g − g_N‖²_{H²}, where h_N = g − g_N and the norms are boundary L² norms.
//
// On the circle ∂h_{N,x}/∂n = (−sin θ/R) D'(θ) and ∂h_{N,y}/∂n = (cos θ/R) D'(θ)
// for the defect D(θ) = S(θ) − ∂g_N/∂n(Re^{iθ}), so
//   norm0_sq = R ∫ D² dθ,   norm1_sq = (1/R) ∫ (D')² dθ.

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mfs/dft.hpp"
#include "mfs/errors.hpp"
#include "mfs/mfs_core.hpp"
#include "mfs/problem.hpp"
#include "mfs/spectral.hpp"

namespace mfs {

struct ErrorConstants {
    double C_Omega = 0;  // trace constant √(1 + 2/R)
    double C_2 = 0;      // min{1, α²}
    double C_3 = 0;      // C_Omega² / C_2²
};

inline ErrorConstants error_constants(double R, double alpha) {
    if (!(R > 0) || !(alpha > 0)) throw DomainError("error_constants requires R > 0 and alpha > 0");
    ErrorConstants c;
    c.C_Omega = std::sqrt(1 + 2 / R);
    c.C_2 = std::min(1.0, alpha * alpha);
    c.C_3 = c.C_Omega * c.C_Omega / (c.C_2 * c.C_2);
    return c;
}

struct BoundaryNorms {
    double norm0_sq = 0;
    double norm1_sq = 0;
    int quad_points = 0;
    std::vector<std::string> warnings;
};

struct ErrorReport {
    int N = 0;
    double norm0_sq = 0;
    double norm1_sq = 0;
    double F = 0;
    int quad_points = 0;
    ErrorConstants constants;
    std::vector<std::string> warnings;
};

inline int default_quad_points(int N) { return std::max(256, 16 * N); }

/// D(θ) = S(θ) − ∂g_N/∂n(Re^{iθ})
inline double defect(const MfsSolution& sol, double theta) {
    return sol.spec.S(theta) - eval_gN_normal_deriv(sol, theta);
}

/// D at θ_j = 2πj/M, j = 0..M−1.
inline std::vector<double> sample_defect(const MfsSolution& sol, int M) {
    const int N = sol.spec.N;
    const auto theta = collocation_angles<double>(M);
    std::vector<double> D(static_cast<std::size_t>(M));
    if (M % N == 0) {
        // θ_j − θ_k lands on the M-point grid: tabulate c once.
        const auto cg = assemble_c(sol.geometry(), M);
        const int step = M / N;
        for (int j = 0; j < M; ++j) {
            double v = 0;
            for (int k = 0; k < N; ++k) v += sol.Q[static_cast<std::size_t>(k)] * cg[static_cast<std::size_t>(((j - k * step) % M + M) % M)];
            D[static_cast<std::size_t>(j)] = sol.spec.S(theta[static_cast<std::size_t>(j)]) - v;
        }
        return D;
    }
    for (int j = 0; j < M; ++j) D[static_cast<std::size_t>(j)] = defect(sol, theta[static_cast<std::size_t>(j)]);
    return D;
}

/// (norm0_sq, norm1_sq) of periodic samples on the circle of radius R; the
/// derivative is spectral (Nyquist mode dropped).
inline std::pair<double, double> sampled_norms(std::span<const double> D, double R) {
    const int M = static_cast<int>(D.size());
    auto Dh = dft::transform_real<double>(D, -1);
    double s0 = 0, s1 = 0;
    for (int m = 0; m < M; ++m) {
        const int n = m <= M / 2 ? m : m - M;
        const double p = std::norm(Dh[static_cast<std::size_t>(m)]) / (double(M) * M);
        s0 += p;
        if (M % 2 == 0 && m == M / 2) continue;
        s1 += double(n) * n * p;
    }
    const double two_pi = boost::math::constants::two_pi<double>();
    return {two_pi * R * s0, two_pi / R * s1};
}

namespace detail {

inline bool changed(double a, double b, double rel) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale > 0 && std::abs(a - b) > rel * scale;
}

}  // namespace detail

/// Trapezoidal boundary norms; M ≥ 8N.  With check_resolution the rule is
/// repeated at 2M and a warning is recorded if either norm moves by > 1e−6.
inline BoundaryNorms boundary_norms_quadrature(const MfsSolution& sol, int quad_points, bool check_resolution = true) {
    if (quad_points < 8 * sol.spec.N)
        throw DomainError("quad_points = " + std::to_string(quad_points) + " is below 8N = " +
                          std::to_string(8 * sol.spec.N));
    BoundaryNorms out;
    out.quad_points = quad_points;
    const auto D = sample_defect(sol, quad_points);
    std::tie(out.norm0_sq, out.norm1_sq) = sampled_norms(D, sol.spec.R);
    if (check_resolution) {
        const auto D2 = sample_defect(sol, 2 * quad_points);
        const auto [n0, n1] = sampled_norms(D2, sol.spec.R);
        if (detail::changed(n0, out.norm0_sq, 1e-6) || detail::changed(n1, out.norm1_sq, 1e-6))
            out.warnings.push_back("boundary norms changed by more than 1e-6 relative when doubling quad_points = " +
                                   std::to_string(quad_points));
    }
    return out;
}

/// Highest |n| carried by the spectral path: a.n_max plus the decay length of Ã_n.
inline int spectral_norm_order(const Geometry<double>& g, const FourierSeries& a, double tail_tol) {
    return a.n_max + static_cast<int>(std::ceil(std::log(tail_tol) / std::log(g.R / g.rho)));
}

/// Series form of the boundary norms.  The defect has Fourier coefficients
///   d_n = (a_n Σ_{l≠0} Ã_{lN+n} − Ã_n Σ_{l≠0} a_{lN+n}) / Σ_l Ã_{lN+n},
/// so norm0_sq = 2πR Σ |d_n|² and norm1_sq = (2π/R) Σ n² |d_n|².
inline BoundaryNorms boundary_norms_spectral(const MfsSolution& sol, const FourierSeries& a,
                                             const CoefficientTable& table) {
    const int N = sol.spec.N;
    const int L = spectral_norm_order(sol.geometry(), a, table.tail_tol);
    if (table.n_max < lattice_table_order(sol.geometry(), N, L, table.tail_tol))
        throw DomainError("coefficient table too short for the spectral norms");
    BoundaryNorms out;
    double s0 = 0, s1 = 0;
    for (int n = -L; n <= L; ++n) {
        const double lam = lattice_sum(table, N, n);
        const double lam_off = lam - table.A_tilde_at(n);
        const std::complex<double> a_off = lattice_sum(a, N, n, true);
        const std::complex<double> d = (a.at(n) * lam_off - table.A_tilde_at(n) * a_off) / lam;
        s0 += std::norm(d);
        s1 += double(n) * n * std::norm(d);
    }
    const double two_pi = boost::math::constants::two_pi<double>();
    out.norm0_sq = two_pi * sol.spec.R * s0;
    out.norm1_sq = two_pi / sol.spec.R * s1;
    if (std::abs(a.at(a.n_max)) > table.tail_tol * std::abs(a.at(0)) + 1e-300 && a.n_max > 0)
        out.warnings.push_back("Fourier series truncated at |n| = " + std::to_string(a.n_max) +
                               " with a coefficient above tail_tol");
    return out;
}

inline BoundaryNorms boundary_norms_spectral(const MfsSolution& sol, const FourierSeries& a,
                                             double tail_tol = kDefaultTailTol) {
    const int L = spectral_norm_order(sol.geometry(), a, tail_tol);
    const auto table = make_coefficient_table(sol.geometry(), lattice_table_order(sol.geometry(), sol.spec.N, L, tail_tol), tail_tol);
    return boundary_norms_spectral(sol, a, table);
}

inline ErrorReport error_bound(const MfsSolution& sol, int quad_points = 0, bool check_resolution = true) {
    if (quad_points <= 0) quad_points = default_quad_points(sol.spec.N);
    const auto norms = boundary_norms_quadrature(sol, quad_points, check_resolution);
    ErrorReport r;
    r.N = sol.spec.N;
    r.norm0_sq = norms.norm0_sq;
    r.norm1_sq = norms.norm1_sq;
    r.quad_points = quad_points;
    r.constants = error_constants(sol.spec.R, sol.spec.alpha);
    r.F = r.constants.C_3 * (r.norm0_sq + r.norm1_sq);
    r.warnings = norms.warnings;
    return r;
}

// ---------------------------------------------------------------------------
// Disk quadrature

/// Value and gradient (∂_x + i∂_y) of a function on the disk.
struct PointValue {
    double value = 0;
    std::complex<double> gradient = 0;
};

using DiskFunction = std::function<PointValue(std::complex<double>)>;

/// ∫_{|x|<R} (u² + |∇u|²) by Gauss–Legendre in r and the trapezoidal rule in θ.
inline double h1_norm_sq_disk(const DiskFunction& u, double R, int n_theta = 128) {
    const auto theta = collocation_angles<double>(n_theta);
    auto ring = [&](double r) {
        double s = 0;
        for (double t : theta) {
            const auto p = u(std::polar(r, t));
            s += p.value * p.value + std::norm(p.gradient);
        }
        return s * boost::math::constants::two_pi<double>() / n_theta * r;
    };
    return boost::math::quadrature::gauss<double, 40>::integrate(ring, 0.0, R);
}

struct TraceCheck {
    double lhs = 0;  // ‖u‖²_{L²(∂Ω)}
    double rhs = 0;  // (1 + 2/R) ‖u‖²_{H¹(Ω)}
    bool holds() const { return lhs <= rhs; }
};

/// Both sides of ‖u‖²_{L²(∂Ω)} ≤ (1 + 2/R)‖u‖²_{H¹(Ω)}.
inline TraceCheck trace_inequality_check(const DiskFunction& u, double R, int quad_points = 128) {
    TraceCheck t;
    const auto theta = collocation_angles<double>(quad_points);
    double b = 0;
    for (double th : theta) {
        const double v = u(std::polar(R, th)).value;
        b += v * v;
    }
    t.lhs = R * b * boost::math::constants::two_pi<double>() / quad_points;
    t.rhs = (1 + 2 / R) * h1_norm_sq_disk(u, R, quad_points);
    return t;
}

}  // namespace mfs
