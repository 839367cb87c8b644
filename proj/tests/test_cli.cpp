#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cicf/commands.hpp"
#include "cicf/config.hpp"

using namespace cicf;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "cicf_cli_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = scratch_dir() / name;
    std::ofstream out(p);
    out << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* kRunConfig = R"(# quick hyperbolic reference run
[ambient]
kind = hyperbolic
n = 2

[grid]
N = 64

[flow]
k = 1
cfl = 0.4
t_end = 40.0
stop_speed_tol = 1e-8
stop_osc_tol = 1e-6
record_every = 100

[init]
kind = perturbed_slice
s = 1.0
amplitude = 0.1
mode = 2

[output]
trace_csv = trace.csv
summary_json = summary.json
)";

} // namespace

TEST_CASE("config parsing accepts the reference file") {
    const auto path = write_config("ok.cfg", kRunConfig);
    const ExperimentConfig cfg = parse_config_file(path.string());
    CHECK(cfg.ambient_kind == ModelKind::Hyperbolic);
    CHECK(cfg.n == 2);
    CHECK(cfg.grid_n == 64);
    CHECK(cfg.flow.k == 1);
    CHECK(cfg.flow.t_end == 40.0);
    CHECK(cfg.init_kind == InitKind::PerturbedSlice);
    CHECK(cfg.init_amplitude == 0.1);
}

TEST_CASE("unknown keys and sections are hard errors") {
    CHECK_THROWS_AS(parse_config_text("[ambient]\nkind = hyperbolic\nn = 2\nm_typo = 1\n"
                                      "[grid]\nN = 64\n[init]\nkind = slice\ns = 1\n",
                                      "t"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text("[ambient]\nkind = hyperbolic\nn = 2\n"
                                      "[grid]\nN = 64\n[init]\nkind = slice\ns = 1\n"
                                      "[plotting]\nstyle = fancy\n",
                                      "t"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text("kind = hyperbolic\n", "t"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[ambient]\nkind = hyperbolic\nkind = euclidean\nn = 2\n"
                                      "[grid]\nN = 64\n[init]\nkind = slice\ns = 1\n",
                                      "t"),
                    ConfigError);
    // m on a non-ads model
    CHECK_THROWS_AS(parse_config_text("[ambient]\nkind = hyperbolic\nn = 2\nm = 1\n"
                                      "[grid]\nN = 64\n[init]\nkind = slice\ns = 1\n",
                                      "t"),
                    ConfigError);
}

TEST_CASE("cmd_run on the reference experiment exits 0 and certifies") {
    const auto cfgp = write_config("run.cfg", kRunConfig);
    const auto out = scratch_dir() / "run_out";
    const int code = cmd_run(cfgp.string(), out.string());
    CHECK(code == 0);

    const std::string summary = slurp(out / "summary.json");
    CHECK(summary.find("\"converged\": true") != std::string::npos);
    CHECK(summary.find("\"pass\": true") != std::string::npos);

    const std::string trace = slurp(out / "trace.csv");
    CHECK(trace.rfind("time,area,weighted_volume,weighted_area,Q,F_max,F_min,grad_max,"
                      "A_norm_max,kappa_min,speed_max,minkowski_residual,hk_deficit\n",
                      0) == 0);
}

TEST_CASE("identical runs produce byte-identical traces") {
    const auto cfgp = write_config("det.cfg", kRunConfig);
    const auto out1 = scratch_dir() / "det1";
    const auto out2 = scratch_dir() / "det2";
    REQUIRE(cmd_run(cfgp.string(), out1.string()) == 0);
    REQUIRE(cmd_run(cfgp.string(), out2.string()) == 0);
    CHECK(slurp(out1 / "trace.csv") == slurp(out2 / "trace.csv"));
}

TEST_CASE("cmd_check on a slice passes all identities and inequalities") {
    const auto cfgp = write_config("check.cfg", R"(
[ambient]
kind = hyperbolic
n = 2
[grid]
N = 256
[init]
kind = slice
s = 1.0
)");
    const auto out = scratch_dir() / "check_out";
    CHECK(cmd_check(cfgp.string(), out.string()) == 0);
    const std::string report = slurp(out / "report.json");
    CHECK(report.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("run with out-of-domain initial data exits 3 naming the node") {
    const auto cfgp = write_config("bad_domain.cfg", R"(
[ambient]
kind = spherical_cap
n = 2
[grid]
N = 64
[flow]
k = 1
t_end = 1.0
[init]
kind = perturbed_slice
s = 1.4
amplitude = 0.4
mode = 2
)");
    const auto out = scratch_dir() / "bad_out";
    CHECK(cmd_run(cfgp.string(), out.string()) == 3);
}

TEST_CASE("config errors exit 4") {
    const auto cfgp = write_config("broken.cfg", "[ambient]\nkind = klein_bottle\n");
    CHECK(cmd_run(cfgp.string(), (scratch_dir() / "x").string()) == 4);
    CHECK(cmd_check("/nonexistent/path.cfg", (scratch_dir() / "x").string()) == 4);
}

TEST_CASE("cmd_slice_profile emits the table with tiny round-trips") {
    const auto cfgp = write_config("prof.cfg", R"(
[ambient]
kind = hyperbolic
n = 2
[grid]
N = 64
[init]
kind = slice
s = 1.0
[profile]
s_min = 0.1
s_max = 2.5
samples = 512
)");
    const auto out = scratch_dir() / "prof_out";
    CHECK(cmd_slice_profile(cfgp.string(), out.string()) == 0);
    const std::string table = slurp(out / "slice_profile.csv");
    CHECK(table.rfind("s,A,W,Q,xi1_roundtrip,xi0_roundtrip\n", 0) == 0);
}

TEST_CASE("cmd_sweep reports second-order identity convergence") {
    const auto cfgp = write_config("sweep.cfg", R"(
[ambient]
kind = hyperbolic
n = 2
[grid]
N = 64
[init]
kind = perturbed_slice
s = 1.0
amplitude = 0.1
mode = 2
[sweep]
mode = check
min_order = 1.8
)");
    const auto out = scratch_dir() / "sweep_out";
    CHECK(cmd_sweep(cfgp.string(), out.string()) == 0);
    const std::string sweep = slurp(out / "sweep.json");
    CHECK(sweep.find("minkowski_order") != std::string::npos);
}

TEST_CASE("cmd_sweep run mode certifies the converged-radius order") {
    const auto cfgp = write_config("sweep_run.cfg", R"(
[ambient]
kind = hyperbolic
n = 2
[grid]
N = 32
[flow]
k = 1
cfl = 0.5
t_end = 40.0
record_every = 500
[init]
kind = perturbed_slice
s = 1.0
amplitude = 0.1
mode = 2
[sweep]
mode = run
min_order = 1.8
)");
    const auto out = scratch_dir() / "sweep_run_out";
    CHECK(cmd_sweep(cfgp.string(), out.string()) == 0);
    const std::string sweep = slurp(out / "sweep.json");
    CHECK(sweep.find("s_star_order") != std::string::npos);
}

TEST_CASE("format_double round-trips") {
    for (double x : {0.1, 1.0 / 3.0, 2.5e-17, -4.0 * 3.141592653589793}) {
        const std::string s = format_double(x);
        CHECK(std::stod(s) == x);
    }
}
