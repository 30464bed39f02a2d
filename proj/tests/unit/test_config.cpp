#include <doctest.h>

#include <sstream>

#include "satft/config.hpp"
#include "satft/errors.hpp"

using namespace satft;

TEST_CASE("config parses keys, comments and blanks") {
    std::stringstream in(
        "# link setup\n"
        "link.f_up_hz = 14e9\n"
        "\n"
        "link.range_a_m = 38000e3   # metres\n"
        "clock.n = 86400\n"
        "ratio.ref_sr_hz = 429228004229873.0\n"
        "stitch.force = true\n");
    Config cfg = Config::parse(in, "test");
    CHECK(cfg.get_double("link.f_up_hz", 0) == 14e9);
    CHECK(cfg.get_double("link.range_a_m", 0) == 38000e3);
    CHECK(cfg.get_long("clock.n", 0) == 86400);
    CHECK(cfg.get_string("ratio.ref_sr_hz", "") == "429228004229873.0");
    CHECK(cfg.get_bool("stitch.force", false));
    CHECK(cfg.get_double("absent", 7.5) == 7.5);
}

TEST_CASE("config rejects malformed lines and duplicates") {
    std::stringstream in1("key_without_value\n");
    CHECK_THROWS_AS(Config::parse(in1, "t"), ParseError);

    std::stringstream in2("a = 1\na = 2\n");
    CHECK_THROWS_AS(Config::parse(in2, "t"), ParseError);

    std::stringstream in3("a = not_a_number\n");
    Config cfg = Config::parse(in3, "t");
    CHECK_THROWS_AS(cfg.get_double("a", 0.0), InvalidSpecError);
}

TEST_CASE("unknown keys are rejected, namespaces allowed") {
    std::stringstream in(
        "clock.noise_a.white_fm = 1e-13\n"
        "link.osc_amplitude_m = 30e3\n"
        "seed = 1\n");
    Config cfg = Config::parse(in, "t");
    CHECK_NOTHROW(cfg.restrict_keys({"clock.", "link.", "seed"}));
    CHECK_THROWS_AS(cfg.restrict_keys({"clock.", "seed"}), InvalidSpecError);
    CHECK_THROWS_AS(cfg.restrict_keys({"clock.noise_a.white_fm", "link.osc_amplitude_m"}),
                    InvalidSpecError); // seed unknown
}

TEST_CASE("required keys") {
    std::stringstream in("a = 1.5\n");
    Config cfg = Config::parse(in, "t");
    CHECK(cfg.require_double("a") == 1.5);
    CHECK_THROWS_AS(cfg.require_double("b"), InvalidSpecError);
    CHECK_THROWS_AS(cfg.require_string("b"), InvalidSpecError);
}
