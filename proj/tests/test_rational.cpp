#include <doctest.h>

#include "curlab/errors.hpp"
#include "curlab/rational.hpp"

using namespace curlab;

TEST_CASE("rational construction is canonical") {
    CHECK(rat(2, 6) == rat(1, 3));
    CHECK(rat(-2, -6) == rat(1, 3));
    CHECK(rat(2, -6) == rat(-1, 3));
    CHECK(rat_to_string(rat(2, 6)) == "1/3");
    CHECK_THROWS_AS(rat(1, 0), ParameterError);
}

TEST_CASE("rational parsing") {
    CHECK(rat_from_string("3/4") == rat(3, 4));
    CHECK(rat_from_string("7") == rat(7));
    CHECK(rat_from_string("-1/2") == rat(-1, 2));
    CHECK(rat_from_string("4/6") == rat(2, 3));
    CHECK_THROWS_AS(rat_from_string(""), ParseError);
    CHECK_THROWS_AS(rat_from_string("a/b"), ParseError);
    CHECK_THROWS_AS(rat_from_string("1/"), ParseError);
    CHECK_THROWS_AS(rat_from_string("1/0"), ParseError);
    CHECK_THROWS_AS(rat_from_string("1.5"), ParseError);
}

TEST_CASE("serialization always carries the denominator") {
    CHECK(rat_to_string(rat(1)) == "1/1");
    CHECK(rat_to_string(rat(0)) == "0/1");
    CHECK(rat_to_string(rat(9, 10)) == "9/10");
}

TEST_CASE("decimal rendering") {
    CHECK(rat_to_decimal(rat(1, 2)) == "0.500000");
    CHECK(rat_to_decimal(rat(9, 10)) == "0.900000");
    CHECK(rat_to_decimal(rat(1, 3)) == "0.333333");
    CHECK(rat_to_decimal(rat(2, 3)) == "0.666667");
    CHECK(rat_to_decimal(rat(-1, 3)) == "-0.333333");
    CHECK(rat_to_decimal(rat(1), 0) == "1");
    CHECK(rat_to_decimal(rat(6, 25), 2) == "0.24");
}

TEST_CASE("integer powers are exact") {
    CHECK(rat_pow(rat(2, 3), rat(3)) == rat(8, 27));
    CHECK(rat_pow(rat(2, 3), rat(0)) == rat(1));
    CHECK(rat_pow(rat(0), rat(5)) == rat(0));
    CHECK(rat_pow(rat(2), rat(-2)) == rat(1, 4));
}

TEST_CASE("rational exponents use exact root extraction") {
    CHECK(rat_pow(rat(1, 4), rat(1, 2)) == rat(1, 2));
    CHECK(rat_pow(rat(8, 27), rat(2, 3)) == rat(4, 9));
    CHECK_THROWS_AS(rat_pow(rat(1, 2), rat(1, 2)), ParameterError);
}

TEST_CASE("power comparison is exact across exponents") {
    // (1/2)^(1/2) vs (3/5)^1: sqrt(1/2) > 3/5 because 1/2 > 9/25
    CHECK(compare_pow(rat(1, 2), rat(1, 2), rat(3, 5), rat(1)) > 0);
    // (1/4)^(1/2) equals (1/2)^1 exactly
    CHECK(compare_pow(rat(1, 4), rat(1, 2), rat(1, 2), rat(1)) == 0);
    CHECK(compare_pow(rat(1, 2), rat(2), rat(1, 2), rat(1)) < 0);
    CHECK(compare_pow(rat(1), rat(5), rat(99, 100), rat(1, 3)) > 0);
    CHECK(compare_pow(rat(0), rat(1), rat(1, 100), rat(7)) < 0);
    CHECK(compare_pow(rat(1, 3), rat(2, 3), rat(1, 3), rat(2, 3)) == 0);
}

TEST_CASE("probability range check") {
    CHECK(is_probability(rat(0)));
    CHECK(is_probability(rat(1)));
    CHECK(is_probability(rat(1, 7)));
    CHECK_FALSE(is_probability(rat(-1, 7)));
    CHECK_FALSE(is_probability(rat(8, 7)));
}
