#include <string>

#include "doctest.h"
#include "uhyp/config.hpp"
#include "uhyp/errors.hpp"

using namespace uhyp;

namespace {

const std::string kGrid = "[grid]\nd = 1\nn = 1\nextent = 10\npoints = 64\n";

int error_line(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_CASE("default config file") {
    const RunConfig cfg = load_config(UHYP_CONFIG_DIR "/default.cfg");
    CHECK(cfg.grid == GridSpec::uniform(1, 1, 10.0, 64));
    REQUIRE(cfg.data.terms.size() == 1);
    CHECK(cfg.data.terms[0].carrier == std::vector<double>{3, 0, 0});
    CHECK(cfg.data.terms[0].width == std::vector<double>{2, 1, 1});
    CHECK(cfg.times == std::vector<double>{0.5, 1.0, 2.0});
    CHECK(cfg.policy.rule == ZeroPlaneRule::zero_out);
    CHECK(cfg.output.binary);
    CHECK_FALSE(cfg.output.csv);
    CHECK(cfg.verify.cross_points == 20);
    CHECK_FALSE(cfg.mode.has_value());
}

TEST_CASE("packets, policy, output and verify keys") {
    const RunConfig cfg = parse_config(kGrid +
                                       "# two packets\n"
                                       "[packet]\namplitude = 0.5 -1\ncarrier = 3, 0, 0\n"
                                       "[packet]\ncarrier = -4 1 0\nwidth = 1\ncenter = 1 2 3\n"
                                       "[run]\ntimes = 0 0.5 1   # trailing comment\n"
                                       "[policy]\nzero_plane = reject\nthreshold = 1e-4\n"
                                       "[output]\nformat = both\ndiagnostics = false\n"
                                       "[verify]\nsphere_nodes = 48\nseed = 99\ncross_times = 1\n");
    REQUIRE(cfg.data.terms.size() == 2);
    CHECK(cfg.data.terms[0].amplitude == Complex(0.5, -1));
    CHECK(cfg.data.terms[0].width == std::vector<double>{1, 1, 1});
    CHECK(cfg.data.terms[1].center == std::vector<double>{1, 2, 3});
    CHECK(cfg.policy.rule == ZeroPlaneRule::reject);
    CHECK(cfg.policy.threshold == 1e-4);
    CHECK(cfg.output.binary);
    CHECK(cfg.output.csv);
    CHECK_FALSE(cfg.output.diagnostics);
    CHECK(cfg.verify.spherical.sphere_nodes == 48);
    CHECK(cfg.verify.seed == 99u);
    CHECK(cfg.verify.cross_times == std::vector<double>{1.0});
}

TEST_CASE("mode data") {
    const RunConfig cfg = parse_config(kGrid + "[mode]\nindex = 10 3 5\n[run]\ntimes = 1\n");
    REQUIRE(cfg.mode.has_value());
    const Field f = cfg.initial_field();
    CHECK(std::abs(std::abs(f.values[777]) - 1.0) < 1e-15);
    CHECK(error_line(kGrid + "[mode]\nindex = 0 3 5\n") == 7);
    CHECK(error_line(kGrid + "[mode]\nindex = 1 3\n") == 7);
    CHECK(error_line(kGrid + "[mode]\nindex = 1 3 40\n") == 7);
}

TEST_CASE("config errors carry line numbers") {
    CHECK(error_line("[grid]\nd = 1\nn = 1\nextent = 10\n") == 1);
    CHECK(error_line(kGrid + "[run]\nspeed = 3\n") == 7);
    CHECK(error_line(kGrid + "[weird]\n") == 6);
    CHECK(error_line(kGrid + "[run]\ntimes = 1 abc\n") == 7);
    CHECK(error_line(kGrid + "just text\n") == 6);
    CHECK(error_line("d = 1\n") == 1);
    CHECK(error_line(kGrid + "[packet]\ncarrier = 3 0\n") == 7);
    CHECK(error_line(kGrid + "[policy]\nzero_plane = maybe\n") == 7);
    CHECK(error_line(kGrid + "[run]\ntimes = 1 1\n") == 6);
    CHECK(error_line("[grid]\nextent = 10\npoints = 63\n") == 1);
    CHECK(error_line(kGrid + "[grid]\n") == 6);
    try {
        parse_config("[grid]\nextent = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 1") == 0);
        CHECK(std::string(e.what()).find("points") != std::string::npos);
    }
}
