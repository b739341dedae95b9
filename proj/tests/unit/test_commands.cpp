#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "uhyp/commands.hpp"
#include "uhyp/errors.hpp"
#include "uhyp/io.hpp"

using namespace uhyp;

namespace {

std::filesystem::path fresh_dir(const char* name) {
    const auto dir = std::filesystem::temp_directory_path() / "uhyp_unit_cmd" / name;
    std::filesystem::remove_all(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig default_config() { return load_config(UHYP_CONFIG_DIR "/default.cfg"); }

}  // namespace

TEST_CASE("run at t = 0 writes the sampled data") {
    RunConfig cfg = default_config();
    cfg.times = {0.0};
    const auto dir = fresh_dir("t0");
    std::ostringstream out;
    CHECK(cmd_run(cfg, dir, out) == 0);
    const Field f = io::load_snapshot(dir / "snapshot_000.bin");
    CHECK(max_abs_diff(f, sample(cfg.data, cfg.grid)) < 1e-12);
    const std::string diag = slurp(dir / "diagnostics.csv");
    CHECK(diag.find("0,0,") != std::string::npos);
    CHECK(diag.find("0.000000e+00") != std::string::npos);
    CHECK(slurp(dir / "config.cfg") == cfg.source);
}

TEST_CASE("run with the default times") {
    const RunConfig cfg = default_config();
    const auto a = fresh_dir("a");
    const auto b = fresh_dir("b");
    std::ostringstream out;
    CHECK(cmd_run(cfg, a, out) == 0);
    CHECK(cmd_run(cfg, b, out) == 0);
    for (const char* name : {"snapshot_000.bin", "snapshot_001.bin", "snapshot_002.bin"}) {
        CHECK(std::filesystem::exists(a / name));
        CHECK(slurp(a / name) == slurp(b / name));
    }
    std::istringstream diag(slurp(a / "diagnostics.csv"));
    std::string line;
    std::getline(diag, line);
    int rows = 0;
    while (std::getline(diag, line)) {
        ++rows;
        CHECK(line.find("PASS") != std::string::npos);
        std::istringstream cells(line);
        std::string cell;
        for (int c = 0; c < 4; ++c) std::getline(cells, cell, ',');
        CHECK(std::stod(cell) < 1e-10);
    }
    CHECK(rows == 3);
}

TEST_CASE("run writes csv when asked") {
    RunConfig cfg = default_config();
    cfg.grid = GridSpec::uniform(1, 1, 5.0, 16);
    cfg.output.csv = true;
    cfg.times = {1.0};
    const auto dir = fresh_dir("csv");
    std::ostringstream out;
    CHECK(cmd_run(cfg, dir, out) == 0);
    CHECK(max_abs_diff(io::load_csv(dir / "snapshot_000.csv"), io::load_snapshot(dir / "snapshot_000.bin")) < 1e-12);
}

TEST_CASE("output directory override") {
    RunConfig cfg = default_config();
    ::unsetenv("UHYP_OUTPUT_DIR");
    CHECK(output_directory(cfg) == std::filesystem::path("uhyp_out"));
    ::setenv("UHYP_OUTPUT_DIR", "/tmp/elsewhere", 1);
    CHECK(output_directory(cfg) == std::filesystem::path("/tmp/elsewhere"));
    ::unsetenv("UHYP_OUTPUT_DIR");
}

TEST_CASE("verify-identity status follows the gaps") {
    RunConfig cfg = default_config();
    std::ostringstream out;
    CHECK(cmd_verify_identity(cfg, out) == 0);
    CHECK(out.str().find("FAIL") == std::string::npos);
    cfg.verify.mismatched_resolution = true;
    std::ostringstream bad;
    CHECK(cmd_verify_identity(cfg, bad) == 1);
    CHECK(bad.str().find("FAIL") != std::string::npos);
}

TEST_CASE("cross-check with zero data") {
    RunConfig cfg = default_config();
    cfg.data.terms[0].amplitude = 0.0;
    std::ostringstream out;
    CHECK(cmd_cross_check(cfg, out) == 0);
    CHECK(out.str().find("max_gap=0.000e+00") != std::string::npos);
}

TEST_CASE("residual usage errors") {
    RunConfig cfg = default_config();
    cfg.times = {1.0};
    std::ostringstream out;
    CHECK_THROWS_AS(cmd_residual(cfg, out), InvalidArgument);
    CHECK_THROWS_AS(cmd_convergence(cfg, out), InvalidArgument);
    RunConfig mode = load_config(UHYP_CONFIG_DIR "/mode.cfg");
    CHECK_THROWS_AS(cmd_cross_check(mode, out), InvalidArgument);
    CHECK(cmd_residual(mode, out) == 0);
}
