#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dimflow/config.hpp"
#include "dimflow/error.hpp"

#include <string>

using namespace dimflow;

namespace {

Errc code_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error for " << text);
    return Errc::InvalidConfig;
}

std::string message_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("defaults describe SL2 standard with the diagonal flow") {
    auto c = parse_config("{}");
    CHECK(c.n == 2);
    CHECK(c.rep.family == RepFamily::Standard);
    REQUIRE(c.flow.Y.size() == 2);
    CHECK(c.flow.Y[0] == 1);
    CHECK(c.flow.Y[1] == -1);
    CHECK(c.seed == 1);
    CHECK_FALSE(c.grassmann.has_value());
}

TEST_CASE("full config round-trips into fields") {
    auto c = parse_config(R"({
        "group": {"series": "A", "n": 3},
        "rep": {"family": "adjoint"},
        "flow": ["1", 0, "-1"],
        "psi": {"C": 2.0, "tau": "1/2", "sigma": "1/3"},
        "grassmann": {"n": 4, "l": 2, "k": 1, "gamma": "inf"},
        "x": "3/7",
        "t": {"t_max": 10, "step": 0.5},
        "H": [16, 32], "scales": {"lo": 4, "hi": 12},
        "samples": 1000, "seed": 42,
        "out": {"csv": "a.csv", "report": "r.txt"}
    })");
    CHECK(c.n == 3);
    CHECK(c.rep.family == RepFamily::Adjoint);
    CHECK(c.psi.tau_param == Rational(1, 2));
    CHECK(c.psi.sigma == Rational(1, 3));
    CHECK(c.psi.C == doctest::Approx(2.0));
    REQUIRE(c.grassmann.has_value());
    CHECK(c.grassmann->gamma.infinite);
    CHECK(c.t_step == doctest::Approx(0.5));
    CHECK(c.H_grid.size() == 2);
    CHECK(c.seed == 42);
    CHECK(c.out_csv == "a.csv");
}

TEST_CASE("flow string and default flow") {
    CHECK(parse_config(R"({"group": {"n": 3}, "flow": "2,-1,-1"})").flow.Y[0] == 2);
    auto d = parse_config(R"({"group": {"n": 4}})");
    CHECK(d.flow.Y == QVec{3, 1, -1, -3});
}

TEST_CASE("invalid configs name the offending field") {
    CHECK(code_of("not json") == Errc::InvalidConfig);
    CHECK(code_of("[1,2]") == Errc::InvalidConfig);
    CHECK(message_of(R"({"flow": [0.5, -0.5]})").find("config.flow[0]") != std::string::npos);
    CHECK(message_of(R"({"psi": {"tau": 0.5}})").find("floats are not exact") != std::string::npos);
    CHECK(message_of(R"({"psi": {"tau": "-1"}})").find("config.psi.tau") != std::string::npos);
    CHECK(message_of(R"({"flow": ["1", "1"]})").find("sum to zero") != std::string::npos);
    CHECK(message_of(R"({"group": {"n": 3}, "flow": ["1", "-1"]})").find("length") != std::string::npos);
    CHECK(message_of(R"({"colour": 1})").find("config.colour") != std::string::npos);
    CHECK(message_of(R"({"psi": {"rate": 1}})").find("config.psi.rate") != std::string::npos);
    CHECK(message_of(R"({"group": {"series": "B"}})").find("config.group.series") != std::string::npos);
    CHECK(message_of(R"({"H": [4, 2]})").find("increase") != std::string::npos);
    CHECK(message_of(R"({"grassmann": {"n": 3, "l": 3, "k": 1}})").find("config.grassmann") != std::string::npos);
    CHECK(message_of(R"({"x": "pi"})").find("config.x") != std::string::npos);
    CHECK(message_of(R"({"seed": -3})").find("config.seed") != std::string::npos);
    CHECK(message_of(R"({"scales": {"lo": 9, "hi": 9}})").find("config.scales") != std::string::npos);
    CHECK_THROWS_AS(load_config("/nonexistent/dimflow.json"), Error);
}

TEST_CASE("hash is deterministic and sensitive") {
    const std::string a = R"({"group": {"n": 3}, "psi": {"tau": "1/2"}})";
    const std::string b = R"({"psi": {"tau": "2/4"}, "group": {"n": 3}})";
    CHECK(parse_config(a).hash() == parse_config(b).hash());
    CHECK(parse_config(a).hash().size() == 16);
    CHECK(parse_config(a).hash() != parse_config(R"({"group": {"n": 3}, "psi": {"tau": "1/3"}})").hash());
    CHECK(parse_config(a).hash() != parse_config(R"({"group": {"n": 3}, "psi": {"tau": "1/2"}, "seed": 2})").hash());
}

TEST_CASE("slice points") {
    CHECK(parse_slice_point("3/7") == HighReal(3) / 7);
    CHECK(parse_slice_point("0.125") == HighReal(1) / 8);
    HighReal phi = parse_slice_point("golden");
    CHECK(abs(phi * phi - phi - 1) < HighReal(1e-45));
    HighReal r = parse_slice_point("sqrt2");
    CHECK(abs(r * r - 2) < HighReal(1e-45));
    HighReal L = parse_slice_point("liouville");
    CHECK(L > HighReal(0.110001) - HighReal(1e-7));
    CHECK(L < HighReal(0.110002));
    CHECK_THROWS_AS(parse_slice_point("e"), Error);
}
