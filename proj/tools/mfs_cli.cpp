// mfs_cli: solve, sweep and verify front end.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "mfs/mfs.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSingular = 3;

struct Globals {
    int quad_points = 0;
    double tail_tol = mfs::kDefaultTailTol;
    std::string out_dir = ".";
};

std::ofstream open_out(const Globals& g, const std::string& name) {
    fs::create_directories(g.out_dir);
    const auto path = fs::path(g.out_dir) / name;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    return f;
}

json spec_json(const mfs::ProblemSpec& s, const mfs::ProblemConfig& cfg) {
    json j = {{"R", s.R},
              {"alpha", s.alpha},
              {"rho", s.rho},
              {"N", s.N},
              {"rho_star", mfs::thm1_threshold(s.R, s.alpha)},
              {"thm1_satisfied", s.thm1_satisfied}};
    json b;
    for (const auto& [k, v] : cfg.values)
        if (k.rfind("boundary.", 0) == 0) b[k.substr(9)] = v;
    j["boundary"] = b;
    return j;
}

int cmd_solve(const Globals& g, const std::string& config, const std::vector<int>& grid) {
    const auto cfg = mfs::load_config(config);
    const auto& spec = cfg.spec;
    for (const auto& w : spec.warnings) std::cerr << "warning: " << w << '\n';
    const auto sol = mfs::solve_charges(spec);
    const int M = g.quad_points > 0 ? std::max(g.quad_points, 8 * spec.N) : mfs::default_quad_points(spec.N);
    const auto rep = mfs::error_bound(sol, M);

    json eig = json::array();
    bool all_positive = true;
    for (const auto& f : sol.system.eigenvalues) {
        eig.push_back(f.real());
        all_positive = all_positive && f.real() > 0;
    }
    json summary = {{"spec", spec_json(spec, cfg)},
                    {"Q", sol.Q},
                    {"eigenvalues", eig},
                    {"min_eigenvalue", sol.system.min_eigenvalue()},
                    {"max_eigenvalue", sol.system.max_eigenvalue()},
                    {"all_eigenvalues_positive", all_positive},
                    {"residual", mfs::residual(sol)},
                    {"path_discrepancy", sol.path_discrepancy},
                    {"error_bound",
                     {{"F", rep.F},
                      {"norm0_sq", rep.norm0_sq},
                      {"norm1_sq", rep.norm1_sq},
                      {"quad_points", rep.quad_points},
                      {"C_Omega", rep.constants.C_Omega},
                      {"C_2", rep.constants.C_2},
                      {"C_3", rep.constants.C_3}}}};
    json warnings = spec.warnings;
    for (const auto& w : rep.warnings) warnings.push_back(w);

    if (!grid.empty()) {
        const int nr = grid[0], nt = grid[1];
        if (nr < 2 || nt < 1) throw CLI::ValidationError("--grid", "needs NR >= 2 and NT >= 1");
        const int n_ref = 256;
        const mfs::ExactSolution exact(spec, mfs::fourier_series(spec, n_ref, 16 * n_ref), g.tail_tol);
        auto f = open_out(g, "field.csv");
        f << "r,theta,gN,g_exact,abs_err\n";
        bool truncated = false;
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nt; ++j) {
                const double r = spec.R * i / (nr - 1), th = 2 * M_PI * j / nt;
                const double gn = mfs::eval_gN(sol, std::polar(r, th));
                const auto ge = exact.evaluate(r, th);
                truncated = truncated || ge.truncation_warning;
                f << mfs::format_double(r) << ',' << mfs::format_double(th) << ',' << mfs::format_double(gn) << ','
                  << mfs::format_double(ge.value) << ',' << mfs::format_double(std::abs(gn - ge.value)) << '\n';
            }
        if (truncated) warnings.push_back("exact reference truncated with the last term above tail_tol");
        summary["field_csv"] = (fs::path(g.out_dir) / "field.csv").string();
    }
    summary["warnings"] = warnings;
    open_out(g, "summary.json") << summary.dump(2) << '\n';

    std::cout << "N = " << spec.N << ", eigenvalues in [" << sol.system.min_eigenvalue() << ", "
              << sol.system.max_eigenvalue() << "]" << (all_positive ? ", all positive" : ", NOT all positive")
              << "\nresidual = " << mfs::residual(sol) << ", F(N) = " << rep.F << '\n';
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
    return 0;
}

int cmd_sweep(const Globals& g, const std::string& config, int n_min, int n_max, int n_step, bool deterministic,
              unsigned jobs) {
    const auto cfg = mfs::load_config(config);
    for (const auto& w : cfg.spec.warnings) std::cerr << "warning: " << w << '\n';
    mfs::SweepOptions opt;
    opt.quad_points = g.quad_points;
    opt.jobs = jobs;
    const auto res = mfs::run_sweep(cfg.spec, n_min, n_max, n_step, opt);
    {
        auto f = open_out(g, "sweep.csv");
        mfs::write_sweep_csv(f, res, !deterministic);
    }
    {
        auto f = open_out(g, "sweep.gp");
        mfs::write_plot_script(f, "sweep.csv", "sweep.png", "F(N), " + fs::path(config).stem().string());
    }
    std::cout << "rows = " << res.rows.size() << ", fitted slope of ln F(N) = " << res.fitted_slope
              << ", decay factor per N = " << std::exp(res.fitted_slope) << '\n';
    for (const auto& r : res.rows)
        if (r.failed()) std::cerr << "row N = " << r.N << ": " << r.status << '\n';
    return res.any_failed() ? kExitFailure : 0;
}

int cmd_verify(const Globals& g, const std::string& suite) {
    mfs::verify::VerifyOptions opt;
    opt.tail_tol = g.tail_tol;
    opt.quad_points = g.quad_points;
    const auto checks = mfs::verify::run_suite(suite, opt);
    mfs::verify::write_checks_csv(std::cout, checks);
    int failed = 0;
    for (const auto& c : checks) failed += !c.passed;
    std::cerr << checks.size() - failed << "/" << checks.size() << " checks passed\n";
    return failed ? kExitFailure : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Method of fundamental solutions for the modified Helmholtz Neumann problem on a disk"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--quad-points", g.quad_points, "boundary quadrature points (default max(256, 16N))")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--tail-tol", g.tail_tol, "relative tail tolerance for the series")->check(CLI::PositiveNumber);
    app.add_option("--out-dir", g.out_dir, "directory for output files");

    std::string config;
    auto* solve = app.add_subcommand("solve", "solve one problem and write summary.json");
    solve->add_option("config", config, "problem config file")->required();
    std::vector<int> grid;
    solve->add_option("--grid", grid, "write field.csv on an NR x NT polar grid")->expected(2);

    auto* sweep = app.add_subcommand("sweep", "sweep N and write sweep.csv and sweep.gp");
    sweep->add_option("config", config, "problem config file")->required();
    int n_min = 2, n_max = 30, n_step = 1;
    unsigned jobs = 0;
    bool deterministic = false;
    sweep->add_option("--n-min", n_min)->required();
    sweep->add_option("--n-max", n_max)->required();
    sweep->add_option("--n-step", n_step)->default_val(1);
    sweep->add_option("--jobs", jobs, "worker threads (0: all cores)");
    sweep->add_flag("--deterministic", deterministic, "write 0 in the wall_s column");

    std::string suite;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::vector<std::string> choices = mfs::verify::suite_names();
    choices.push_back("all");
    verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(choices));

    for (auto* sub : {solve, sweep, verify}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (*solve) return cmd_solve(g, config, grid);
        if (*sweep) return cmd_sweep(g, config, n_min, n_max, n_step, deterministic, jobs);
        if (*verify) return cmd_verify(g, suite);
    } catch (const mfs::ConfigError& e) {
        std::cerr << config << ": " << e.what() << '\n';
        return kExitFailure;
    } catch (const mfs::SingularSystem& e) {
        std::cerr << "singular system at mode m = " << e.mode() << ": " << e.what() << '\n';
        return kExitSingular;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const mfs::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return 0;
}
