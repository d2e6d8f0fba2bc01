#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "mfs/dft.hpp"
#include "mfs/mfs_core.hpp"
#include "mfs/verify.hpp"
#include "oracle.hpp"

using namespace mfs;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<std::vector<double>> dense(const std::vector<double>& c) {
    const std::size_t N = c.size();
    std::vector<std::vector<double>> G(N, std::vector<double>(N));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) G[i][j] = c[(j + N - i) % N];
    return G;
}

}  // namespace

TEST_CASE("kernel against its definition with an independent K_1", "[mfs_core]") {
    const Geometry<double> g{1.0, 1.0, 3.0};
    for (double th : {0.0, 0.3, 1.0, 2.0, std::numbers::pi, 5.5}) {
        CAPTURE(th);
        const double ref = static_cast<double>(oracle::kernel_c(1.0, 1.0, 3.0, oracle::Big(th)));
        CHECK_THAT(kernel_c(g, th), WithinRel(ref, 1e-13));
    }
    // c is even and 2π-periodic
    CHECK_THAT(kernel_c(g, 0.7), WithinRel(kernel_c(g, -0.7), 1e-15));
    CHECK_THAT(kernel_c(g, 0.7), WithinRel(kernel_c(g, 0.7 + 2 * std::numbers::pi), 1e-13));
}

TEST_CASE("assembly mirrors the half table", "[mfs_core]") {
    const Geometry<double> g{1.0, 2.0, 2.5};
    for (int N : {2, 3, 7, 12}) {
        const auto c = assemble_c(g, N);
        REQUIRE(c.size() == std::size_t(N));
        for (int l = 0; l < N; ++l) {
            CHECK(c[l] == c[(N - l) % N]);
            CHECK_THAT(c[l], WithinRel(kernel_c(g, 2 * std::numbers::pi * l / N), 1e-14));
        }
    }
}

TEST_CASE("DFT paths agree", "[dft]") {
    std::vector<std::complex<double>> x;
    for (int k = 0; k < 64; ++k) x.emplace_back(std::sin(0.3 * k * k), std::cos(1.7 * k));
    const auto a = dft::direct<double>(x, -1);
    const auto b = dft::fft<double>(x, -1);
    for (int k = 0; k < 64; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-12);
    const auto back = dft::transform<double>(b, +1);
    for (int k = 0; k < 64; ++k) CHECK(std::abs(back[k] / 64.0 - x[k]) < 1e-14);
    const auto w = dft::twiddles<double>(12);
    for (int k = 1; k < 12; ++k) CHECK(w[12 - k] == std::conj(w[k]));
}

TEST_CASE("symmetric eigenvalues match the DFT", "[mfs_core]") {
    const Geometry<double> g{1.0, 1.0, 3.0};
    for (int N : {2, 5, 6, 16, 31}) {
        const auto c = assemble_c(g, N);
        const auto f = eigenvalues_dft(c);
        const auto fs = eigenvalues_symmetric(c);
        double l1 = 0;
        for (double v : c) l1 += std::abs(v);
        for (int m = 0; m < N; ++m) {
            // both sums carry rounding of order N eps sum|c|, whatever the size of f_m
            CHECK_THAT(f[m].real(), WithinAbs(fs[m], 1e-14 * l1));
            CHECK(std::abs(f[m].imag()) < 1e-14);
            CHECK(std::abs(f[m] - std::conj(f[(N - m) % N])) < 1e-14);
        }
    }
}

TEST_CASE("circulant inverse against dense elimination", "[mfs_core]") {
    const Geometry<double> g{1.0, 1.0, 3.0};
    for (int N : {2, 3, 6, 11, 16}) {
        CAPTURE(N);
        const auto sys = make_circulant_system(g, N);
        const auto inv = oracle::dense_inverse(dense(sys.c));
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) CHECK(std::abs(inv[i][j] - sys.b[(j + N - i) % N]) < 1e-9 * std::abs(inv[0][0]));
        CHECK(verify::identity_defect(sys.c, sys.b) < 1e-10);
    }
}

TEST_CASE("singular circulant reports the mode", "[mfs_core]") {
    const std::vector<double> c = {1.0, 1.0, -1.0, -1.0};  // f(1) = 0, f(-1) = 0
    const auto f = eigenvalues_dft(c);
    try {
        circulant_inverse(c, f);
        FAIL("expected SingularSystem");
    } catch (const SingularSystem& e) {
        CHECK(e.mode() == 0);
    }
    const std::vector<double> s = {1, 2, 3, 4};
    CHECK_THROWS_AS(charges_eigenspace<double>(f, s), SingularSystem);
}

TEST_CASE("solve: collocation, paths and evaluation", "[mfs_core]") {
    const auto sol = solve_charges(verify::pulse_spec(6));
    double smax = 0;
    for (double v : sol.S) smax = std::max(smax, std::abs(v));
    CHECK(residual(sol) <= 1e-9 * smax);
    CHECK(sol.path_discrepancy < 1e-10);
    for (int j = 0; j < 6; ++j)
        CHECK_THAT(eval_gN_normal_deriv(sol, sol.layout.theta[j]), WithinRel(sol.S[j], 1e-9));

    // normal derivative between nodes vs a radial difference of g_N
    for (double th : {std::numbers::pi / 6, 1.5 * std::numbers::pi / 3 + 0.1}) {
        const double h = 1e-5;
        // one-sided, second order: (3f(R) − 4f(R−h) + f(R−2h))/(2h)
        const double fd = (3 * eval_gN(sol, std::polar(1.0, th)) - 4 * eval_gN(sol, std::polar(1.0 - h, th)) +
                           eval_gN(sol, std::polar(1.0 - 2 * h, th))) / (2 * h);
        CHECK_THAT(eval_gN_normal_deriv(sol, th), WithinAbs(fd, 1e-6));
        const auto grad = eval_gN_gradient(sol, std::polar(1.0, th));
        CHECK_THAT(eval_gN_normal_deriv(sol, th),
                   WithinRel(grad.real() * std::cos(th) + grad.imag() * std::sin(th), 1e-12));
    }
    CHECK_THROWS_AS(eval_gN(sol, {1.1, 0.0}), DomainError);

    auto zero = sol;
    std::fill(zero.Q.begin(), zero.Q.end(), 0.0);
    CHECK(eval_gN_normal_deriv(zero, 0.4) == 0.0);
    CHECK(eval_gN(zero, {0.2, 0.1}) == 0.0);
}

TEST_CASE("N = 2 solves", "[mfs_core]") {
    const auto sol = solve_charges(verify::pulse_spec(2));
    CHECK(sol.system.min_eigenvalue() > 0);
    CHECK(residual(sol) < 1e-12);
}

TEST_CASE("extended-precision instantiation", "[mfs_core]") {
    using B = oracle::Big;
    const Geometry<B> g{B(1), B(1), B(3)};
    const auto c = assemble_c(g, 24);
    const auto f = eigenvalues_dft(c);
    const auto b = circulant_inverse(c, f, B(1e-40));
    CHECK(static_cast<double>(verify::identity_defect(c, b)) < 1e-40);
}
