#pragma once

// Sweeps of the error bound F(N) over a range of collocation counts.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "mfs/errbound.hpp"
#include "mfs/errors.hpp"
#include "mfs/mfs_core.hpp"
#include "mfs/problem.hpp"

namespace mfs {

inline constexpr const char* kSweepCsvHeader = "N,F,norm0_sq,norm1_sq,min_eig,residual,wall_s,status";

struct SweepRow {
    int N = 0;
    double F = std::numeric_limits<double>::quiet_NaN();
    double norm0_sq = std::numeric_limits<double>::quiet_NaN();
    double norm1_sq = std::numeric_limits<double>::quiet_NaN();
    double min_eig = std::numeric_limits<double>::quiet_NaN();
    double residual = std::numeric_limits<double>::quiet_NaN();
    double wall_s = 0;
    std::string status = "ok";

    bool failed() const { return status.rfind("ok", 0) != 0 && status.rfind("warn", 0) != 0; }
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double fitted_slope = std::numeric_limits<double>::quiet_NaN();

    bool any_failed() const {
        return std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.failed(); });
    }
};

struct SweepOptions {
    int quad_points = 0;  // 0: max(256, 16N) per row
    unsigned jobs = 0;    // 0: hardware concurrency
    bool check_resolution = true;
};

/// Least-squares slope of ln F against N over the rows that succeeded with F > 0.
inline double fit_log_slope(const std::vector<SweepRow>& rows) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& r : rows) {
        if (r.failed() || !(r.F > 0)) continue;
        const double x = r.N, y = std::log(r.F);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    const double den = n * sxx - sx * sx;
    return (n * sxy - sx * sy) / den;
}

inline SweepRow sweep_row(const ProblemSpec& base, int N, const SweepOptions& opt) {
    SweepRow row;
    row.N = N;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const auto spec = with_N(base, N);
        const auto sol = solve_charges(spec);
        const int M = opt.quad_points > 0 ? std::max(opt.quad_points, 8 * N) : default_quad_points(N);
        const auto rep = error_bound(sol, M, opt.check_resolution);
        row.F = rep.F;
        row.norm0_sq = rep.norm0_sq;
        row.norm1_sq = rep.norm1_sq;
        row.min_eig = sol.system.min_eigenvalue();
        row.residual = residual(sol);
        if (!rep.warnings.empty()) row.status = "warn:resolution";
        if (!(row.min_eig > 0) && spec.thm1_satisfied) row.status = "fail:nonpositive_eigenvalue";
    } catch (const SingularSystem& e) {
        row.status = "fail:singular_m" + std::to_string(e.mode());
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), ',', ';');
        row.status = "fail:" + msg;
    }
    row.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

/// Rows for N = n_min, n_min + n_step, ..., ≤ n_max, computed in parallel and
/// returned in ascending N.
inline SweepResult run_sweep(const ProblemSpec& base, int n_min, int n_max, int n_step = 1,
                             const SweepOptions& opt = {}) {
    if (n_min < 2) throw DomainError("sweep: n_min must be >= 2");
    if (n_max <= n_min) throw DomainError("sweep: empty range, need n_min < n_max");
    if (n_step < 1) throw DomainError("sweep: n_step must be >= 1");
    std::vector<int> Ns;
    for (int N = n_min; N <= n_max; N += n_step) Ns.push_back(N);
    SweepResult out;
    out.rows.resize(Ns.size());
    unsigned jobs = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t start = 0; start < Ns.size(); start += jobs) {
        std::vector<std::future<SweepRow>> batch;
        for (std::size_t i = start; i < std::min(Ns.size(), start + jobs); ++i)
            batch.push_back(std::async(std::launch::async, sweep_row, std::cref(base), Ns[i], std::cref(opt)));
        for (std::size_t i = 0; i < batch.size(); ++i) out.rows[start + i] = batch[i].get();
    }
    out.fitted_slope = fit_log_slope(out.rows);
    return out;
}

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// CSV with kSweepCsvHeader; wall_s is written as 0 when include_timing is false.
inline void write_sweep_csv(std::ostream& os, const SweepResult& r, bool include_timing = true) {
    os << kSweepCsvHeader << '\n';
    for (const auto& row : r.rows) {
        os << row.N << ',' << format_double(row.F) << ',' << format_double(row.norm0_sq) << ','
           << format_double(row.norm1_sq) << ',' << format_double(row.min_eig) << ',' << format_double(row.residual)
           << ',' << (include_timing ? format_double(row.wall_s) : std::string("0")) << ',' << row.status << '\n';
    }
}

/// gnuplot script plotting F(N) on a logarithmic axis.
inline void write_plot_script(std::ostream& os, const std::string& csv_name, const std::string& png_name,
                              const std::string& title) {
    os << "set terminal pngcairo size 800,600\n"
       << "set output '" << png_name << "'\n"
       << "set datafile separator ','\n"
       << "set key off\n"
       << "set title '" << title << "'\n"
       << "set xlabel 'N'\n"
       << "set ylabel 'F(N)'\n"
       << "set logscale y\n"
       << "set format y '10^{%L}'\n"
       << "set grid\n"
       << "plot '" << csv_name << "' every ::1 using 1:2 with linespoints pt 7\n";
}

}  // namespace mfs
