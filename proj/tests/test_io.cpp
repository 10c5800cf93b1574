// Config surfaces: spectrum and filter JSON objects, grid specs, round-trips.

#include <doctest.h>

#include <cmath>

#include "zenolab/errors.hpp"
#include "zenolab/io.hpp"

using namespace zenolab;
using zenolab::io::json;

TEST_CASE("spectrum configs parse and round-trip") {
    const char* configs[] = {
        R"({"kind":"lorentzian","C":2.0,"omega_m":5.0,"gamma_r":0.5})",
        R"({"kind":"power_law","A":1.0,"eta":1.5,"omega_c":100.0})",
        R"({"kind":"tail_cutoff","A":1.0,"beta":0.5,"omega_c":10.0,"side":-1,"gamma_r":1.0})",
        R"({"kind":"hydrogenic","alpha":0.01,"omega_b":50.0})",
        R"({"kind":"flat","G0":1.0,"omega_lo":-1.0,"omega_hi":1.0})",
        R"({"kind":"tabulated","omega":[0.0,1.0,2.0],"G":[0.0,1.0,0.0]})",
    };
    for (const char* c : configs) {
        const auto spec = io::parse_spectrum(json::parse(c));
        const auto round = io::parse_spectrum(io::spectrum_to_json(spec));
        for (double w : {-0.5, 0.3, 1.7, 12.0}) CHECK(spec(w) == round(w));
    }
}

TEST_CASE("spectrum config diagnostics name the field") {
    CHECK_THROWS_WITH_AS(io::parse_spectrum(json::parse(R"({"kind":"lorentzian","C":1.0})")),
                         doctest::Contains("omega_m"), ConfigError);
    CHECK_THROWS_WITH_AS(io::parse_spectrum(json::parse(R"({"kind":"wavelet"})")),
                         doctest::Contains("wavelet"), ConfigError);
    CHECK_THROWS_AS(io::parse_spectrum(json::parse(
                        R"({"kind":"tabulated","omega":[1.0,0.5],"G":[1.0,1.0]})")),
                    ConfigError);
    CHECK_THROWS_AS(io::parse_spectrum(json::parse("[1,2]")), ConfigError);
}

TEST_CASE("filter configs") {
    const auto p = io::parse_filter(json::parse(R"({"kind":"projective","tau":0.5})"));
    CHECK(p.filter.effective_rate() == doctest::Approx(4.0));
    CHECK_FALSE(p.monitor_validity_warning);

    const auto c = io::parse_filter(json::parse(R"({"kind":"continuous","nu":7.0})"));
    CHECK(c.filter.effective_rate() == doctest::Approx(7.0));

    const auto m = io::parse_filter(json::parse(R"({"kind":"monitor","omega":1.0,"gamma_u":100.0})"));
    CHECK(m.filter.effective_rate() == doctest::Approx(0.02));
    CHECK_FALSE(m.monitor_validity_warning);
    const auto hot = io::parse_filter(json::parse(R"({"kind":"monitor","omega":1.0,"gamma_u":2.0})"));
    CHECK(hot.monitor_validity_warning);

    CHECK_THROWS_AS(io::parse_filter(json::parse(R"({"kind":"projective"})")), ConfigError);
    CHECK_THROWS_AS(io::parse_filter(json::parse(R"({"kind":"continuous","nu":-1.0})")),
                    ConfigError);

    // round-trip
    const auto again = io::parse_filter(io::filter_to_json(p.filter));
    CHECK(again.filter.effective_rate() == doctest::Approx(4.0));
}

TEST_CASE("grid specs") {
    const auto g = io::parse_grid_spec("log:0.1:1000:5");
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 0.1);
    CHECK(g.back() == 1000.0);
    CHECK(g[2] == doctest::Approx(10.0));
    CHECK_THROWS_AS(io::parse_grid_spec("lin:0:1:5"), ConfigError);
    CHECK_THROWS_AS(io::parse_grid_spec("log:1:0.1:5"), ConfigError);
    CHECK_THROWS_AS(io::parse_grid_spec("log:0:1:5"), ConfigError);
    CHECK_THROWS_AS(io::parse_grid_spec("log:1:10:2.5"), ConfigError);
    CHECK_THROWS_AS(io::parse_grid_spec("log:1:10:5junk"), ConfigError);
}

TEST_CASE("doubles round-trip through the CSV formatter") {
    for (double v : {1.0, -0.3333333333333333, 6.28e-23, 1.7976931348623157e308}) {
        CHECK(std::strtod(io::format_double(v).c_str(), nullptr) == v);
    }
}

TEST_CASE("malformed configs raise ConfigError, never crash") {
    const char* bad[] = {
        "null",
        "42",
        R"({"kind":42})",
        R"({"kind":"lorentzian","C":"x","omega_m":0,"gamma_r":1})",
        R"({"kind":"lorentzian","C":-1,"omega_m":0,"gamma_r":1})",
        R"({"kind":"power_law","A":1,"eta":0,"omega_c":1})",
        R"({"kind":"tail_cutoff","A":1,"beta":1.5,"omega_c":1,"side":1,"gamma_r":1})",
        R"({"kind":"flat","G0":1,"omega_lo":2,"omega_hi":1})",
        R"({"kind":"tabulated","omega":[0,1],"G":[0]})",
        R"({"kind":"tabulated","omega":[0,"a"],"G":[0,1]})",
    };
    for (const char* c : bad) {
        CHECK_THROWS_AS(io::parse_spectrum(json::parse(c)), ConfigError);
    }
    for (const char* c : {"null", R"({"kind":"projective","tau":-1})",
                          R"({"kind":"monitor","omega":1})"}) {
        CHECK_THROWS_AS(io::parse_filter(json::parse(c)), ConfigError);
    }
}
