#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rollpack/rational.hpp"

using namespace rollpack;

TEST_CASE("fractions parse and stay reduced") {
    CHECK(parse_rational("13/20") == rat(13, 20));
    CHECK(parse_rational("26/40") == rat(13, 20));
    CHECK(parse_rational("2") == rat(2));
    CHECK(parse_rational(" 1/3 ") == rat(1, 3));
    CHECK(to_string(rat(26, 40)) == "13/20");
    CHECK(to_string(rat(2)) == "2");
}

TEST_CASE("decimal literals convert exactly") {
    CHECK(parse_rational("0.36") == rat(9, 25));
    CHECK(parse_rational("0.65") == rat(13, 20));
    CHECK(parse_rational("0.5") == rat(1, 2));
    CHECK(parse_rational(".25") == rat(1, 4));
    CHECK(parse_rational("1.0") == rat(1));
    CHECK(parse_rational("-0.5") == rat(-1, 2));
}

TEST_CASE("malformed input throws") {
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
    CHECK_THROWS_AS(rat(1, 0), std::invalid_argument);
}

TEST_CASE("ceil and floor") {
    CHECK(ceil_rat(rat(3, 2)) == 2);
    CHECK(ceil_rat(rat(2)) == 2);
    CHECK(ceil_rat(rat(0)) == 0);
    CHECK(ceil_rat(rat(-3, 2)) == -1);
    CHECK(floor_rat(rat(3, 2)) == 1);
    CHECK(floor_rat(rat(-3, 2)) == -2);
}
