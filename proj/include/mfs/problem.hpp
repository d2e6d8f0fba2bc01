#pragma once

// Problem description for the Neumann problem  Δg − α²g = 0  in the disk |x| < R,
// ∂g/∂n = S on |x| = R, together with the point layout used by the method of
// fundamental solutions.  Indices are 0-based throughout.

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/fpclassify.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "mfs/errors.hpp"

namespace mfs {

/// Radial kernel Φ(r) with its derivative Φ'(r).
struct PulseKernel {
    std::string name;
    std::function<double(double)> phi;
    std::function<double(double)> dphi;
};

/// Φ(r) = e^{-αr}/√r
inline PulseKernel exp_sqrt_kernel(double alpha) {
    return {"exp_sqrt",
            [alpha](double r) { return std::exp(-alpha * r) / std::sqrt(r); },
            [alpha](double r) {
                const double e = std::exp(-alpha * r);
                return -alpha * e / std::sqrt(r) - 0.5 * e / (r * std::sqrt(r));
            }};
}

/// Φ(r) = e^{-r²}
inline PulseKernel gaussian_kernel() {
    return {"gauss",
            [](double r) { return std::exp(-r * r); },
            [](double r) { return -2.0 * r * std::exp(-r * r); }};
}

/// Boundary data given directly as a 2π-periodic function of the angle.
struct AnalyticBoundary {
    std::function<double(double)> S;
    std::string description;
};

/// Boundary data ∂g/∂n = −∂Φ(|x−P|)/∂n generated by a pulse at P, |P| < R.
struct PulseBoundary {
    PulseKernel kernel;
    std::complex<double> P;
};

using BoundaryData = std::variant<AnalyticBoundary, PulseBoundary>;

/// S(θ) on the circle of radius R.
inline double boundary_value(const BoundaryData& bd, double R, double theta) {
    if (const auto* a = std::get_if<AnalyticBoundary>(&bd)) return a->S(theta);
    const auto& p = std::get<PulseBoundary>(bd);
    const std::complex<double> e = std::polar(1.0, theta);
    const std::complex<double> x = R * e;
    const double dist = std::abs(x - p.P);
    if (!(dist > 0)) throw DomainError("collocation point coincides with the pulse position");
    return -p.kernel.dphi(dist) * (R - std::real(e * std::conj(p.P))) / dist;
}

/// ρ* = √(4α²R²+6−2√(4α²R²+9))/α.  Every ρ > ρ* gives positive circulant eigenvalues.
template <class Real>
Real thm1_threshold(Real R, Real alpha) {
    using std::sqrt;
    if (!(R > 0) || !(alpha > 0) || !(boost::math::isfinite)(R) || !(boost::math::isfinite)(alpha))
        throw DomainError("thm1_threshold requires finite R > 0 and alpha > 0");
    const Real t = 4 * alpha * alpha * R * R;
    return sqrt(t + 6 - 2 * sqrt(t + 9)) / alpha;
}

/// Disk radius, decay constant and charge radius.
template <class Real>
struct Geometry {
    Real R;
    Real alpha;
    Real rho;
};

struct ProblemSpec {
    double R = 1;
    double alpha = 1;
    double rho = 2;
    int N = 2;
    BoundaryData boundary;
    bool thm1_satisfied = false;
    std::vector<std::string> warnings;

    Geometry<double> geometry() const { return {R, alpha, rho}; }
    double S(double theta) const { return boundary_value(boundary, R, theta); }
};

/// Validated construction.  Throws ValidationError listing every violated
/// constraint; ρ ≤ ρ* is only recorded as a warning.
inline ProblemSpec make_problem(double R, double alpha, double rho, int N, BoundaryData boundary) {
    std::vector<std::string> bad;
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(R) || !(R > 0)) bad.push_back("R must be finite and > 0");
    if (!finite(alpha) || !(alpha > 0)) bad.push_back("alpha must be finite and > 0");
    if (!finite(rho) || !(rho > R)) bad.push_back("rho must be finite and > R");
    if (N < 2) bad.push_back("N must be >= 2");
    if (const auto* a = std::get_if<AnalyticBoundary>(&boundary)) {
        if (!a->S) bad.push_back("analytic boundary function is empty");
    } else {
        const auto& p = std::get<PulseBoundary>(boundary);
        if (!p.kernel.phi || !p.kernel.dphi) bad.push_back("pulse kernel is incomplete");
        if (!(std::abs(p.P) < R)) bad.push_back("pulse position must satisfy |P| < R");
    }
    if (!bad.empty()) throw ValidationError(std::move(bad));

    ProblemSpec s;
    s.R = R;
    s.alpha = alpha;
    s.rho = rho;
    s.N = N;
    s.boundary = std::move(boundary);
    const double threshold = thm1_threshold(R, alpha);
    s.thm1_satisfied = rho > threshold;
    if (!s.thm1_satisfied)
        s.warnings.push_back("rho = " + std::to_string(rho) + " <= rho* = " + std::to_string(threshold) +
                             ": positivity of the eigenvalues is not guaranteed");
    return s;
}

/// Same problem with a different collocation count.
inline ProblemSpec with_N(const ProblemSpec& s, int N) {
    return make_problem(s.R, s.alpha, s.rho, N, s.boundary);
}

struct PointLayout {
    std::vector<std::complex<double>> charge_points;
    std::vector<std::complex<double>> collocation_points;
    std::vector<double> theta;
    std::complex<double> omega;
};

/// θ_j = 2πj/N, j = 0..N−1.
template <class Real>
std::vector<Real> collocation_angles(int N) {
    using boost::math::constants::two_pi;
    std::vector<Real> t(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) t[static_cast<std::size_t>(j)] = two_pi<Real>() * Real(j) / Real(N);
    return t;
}

inline PointLayout layout(const ProblemSpec& s) {
    PointLayout L;
    L.theta = collocation_angles<double>(s.N);
    L.omega = std::polar(1.0, L.theta.size() > 1 ? L.theta[1] : 0.0);
    for (double t : L.theta) {
        L.charge_points.push_back(std::polar(s.rho, t));
        L.collocation_points.push_back(std::polar(s.R, t));
    }
    return L;
}

/// s_j = S(θ_j)
inline std::vector<double> boundary_rhs(const ProblemSpec& s) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(s.N));
    for (double t : collocation_angles<double>(s.N)) out.push_back(s.S(t));
    return out;
}

}  // namespace mfs
