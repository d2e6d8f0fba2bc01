#include <catch_amalgamated.hpp>

#include <json.hpp>
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mfs/config.hpp"
#include "mfs/sweep.hpp"
#include "mfs/verify.hpp"

using namespace mfs;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;
using Catch::Matchers::WithinRel;

namespace fs = std::filesystem;

namespace {

struct Run {
    int status;
    std::string output;
};

// Runs the CLI with stderr folded into stdout.
Run run_cli(const std::string& args) {
    const std::string cmd = std::string(MFS_CLI) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[512];
    while (fgets(buf, sizeof buf, p)) out += buf;
    const int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const auto d = fs::temp_directory_path() / ("mfs_cli_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

const std::string cfg_dir = MFS_CONFIG_DIR;

}  // namespace

TEST_CASE("least-squares slope", "[sweep]") {
    std::vector<SweepRow> rows;
    for (int N = 2; N <= 10; ++N) {
        SweepRow r;
        r.N = N;
        r.F = 3.0 * std::exp(-0.7 * N);
        rows.push_back(r);
    }
    CHECK_THAT(fit_log_slope(rows), WithinRel(-0.7, 1e-12));
    rows[3].status = "fail:singular_m0";
    rows[3].F = 1e9;
    CHECK_THAT(fit_log_slope(rows), WithinRel(-0.7, 1e-12));
    CHECK(std::isnan(fit_log_slope({rows[0]})));
}

TEST_CASE("sweep rows and CSV", "[sweep]") {
    const auto spec = verify::pulse_spec();
    const auto r = run_sweep(spec, 2, 12, 2);
    REQUIRE(r.rows.size() == 6);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        CHECK(r.rows[i].N == 2 + 2 * int(i));
        CHECK(r.rows[i].min_eig > 0);
        CHECK_FALSE(r.rows[i].failed());
    }
    CHECK(r.fitted_slope < 0);
    CHECK_FALSE(r.any_failed());

    std::ostringstream a, b;
    write_sweep_csv(a, r, false);
    write_sweep_csv(b, run_sweep(spec, 2, 12, 2, {0, 1, true}), false);
    CHECK(a.str() == b.str());
    CHECK_THAT(a.str(), StartsWith("N,F,norm0_sq,norm1_sq,min_eig,residual,wall_s,status\n"));

    CHECK_THROWS_AS(run_sweep(spec, 6, 6), DomainError);
    CHECK_THROWS_AS(run_sweep(spec, 1, 6), DomainError);
    CHECK_THROWS_AS(run_sweep(spec, 2, 6, 0), DomainError);

    std::ostringstream gp;
    write_plot_script(gp, "sweep.csv", "sweep.png", "t");
    CHECK_THAT(gp.str(), ContainsSubstring("set logscale y"));
    CHECK_THAT(gp.str(), ContainsSubstring("'sweep.csv'"));
}

TEST_CASE("solve command", "[cli]") {
    const auto out = scratch("solve");
    const auto r = run_cli("--out-dir " + out.string() + " solve " + cfg_dir + "/fig1.cfg --grid 5 8");
    REQUIRE(r.status == 0);
    CHECK_THAT(r.output, ContainsSubstring("all positive"));
    const auto j = nlohmann::json::parse(slurp(out / "summary.json"));
    CHECK(j["spec"]["N"] == 6);
    CHECK(j["eigenvalues"].size() == 6);
    CHECK(j["all_eigenvalues_positive"] == true);
    CHECK(j["Q"].size() == 6);
    const auto field = slurp(out / "field.csv");
    CHECK_THAT(field, StartsWith("r,theta,gN,g_exact,abs_err\n"));
    CHECK(std::count(field.begin(), field.end(), '\n') == 1 + 5 * 8);
}

TEST_CASE("solve with N = 2", "[cli]") {
    const auto out = scratch("n2");
    std::ofstream(out / "n2.cfg") << "R = 1\nalpha = 1\nrho = 3\nN = 2\nboundary.kind = pulse\n"
                                     "boundary.kernel = exp_sqrt\nboundary.P_radius = 0.2\nboundary.P_angle = pi/3\n";
    CHECK(run_cli("--out-dir " + out.string() + " solve " + (out / "n2.cfg").string()).status == 0);
}

TEST_CASE("malformed config", "[cli]") {
    const auto out = scratch("bad");
    std::ofstream(out / "bad.cfg") << "R = 1\nalpah = 1\n";
    const auto r = run_cli("--out-dir " + out.string() + " solve " + (out / "bad.cfg").string());
    CHECK(r.status != 0);
    CHECK_THAT(r.output, ContainsSubstring("alpah"));
    CHECK_THAT(r.output, ContainsSubstring("line 2"));
}

TEST_CASE("sweep command", "[cli]") {
    const auto out = scratch("sweep");
    const auto r = run_cli("--out-dir " + out.string() + " sweep " + cfg_dir + "/fig2a.cfg --n-min 2 --n-max 10 --deterministic");
    REQUIRE(r.status == 0);
    CHECK_THAT(r.output, ContainsSubstring("fitted slope"));
    const auto csv = slurp(out / "sweep.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
    CHECK(fs::exists(out / "sweep.gp"));
    // repeatable byte for byte
    const auto out2 = scratch("sweep2");
    run_cli("--out-dir " + out2.string() + " sweep " + cfg_dir + "/fig2a.cfg --n-min 2 --n-max 10 --deterministic");
    CHECK(slurp(out2 / "sweep.csv") == csv);

    CHECK(run_cli("sweep " + cfg_dir + "/fig2a.cfg --n-min 8 --n-max 8").status != 0);
}

TEST_CASE("verify command", "[cli]") {
    const auto r = run_cli("verify circulant");
    CHECK(r.status == 0);
    CHECK_THAT(r.output, StartsWith("suite,check,status,measured,relation,threshold\n"));
    CHECK_THAT(r.output, ContainsSubstring("circulant,identity_max_entry_error,pass"));
    CHECK(run_cli("verify bogus").status != 0);
}
