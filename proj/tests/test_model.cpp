#include <doctest.h>

#include "curlab/battery.hpp"
#include "curlab/errors.hpp"
#include "curlab/model.hpp"

using namespace curlab;

namespace {

BitVector bits(std::initializer_list<int> values) {
    BitVector b;
    for (const int v : values) b.bits.push_back(static_cast<std::uint8_t>(v));
    return b;
}

}  // namespace

TEST_CASE("bit vector indexing puts the center's bit first") {
    const BitVector b = bits({1, 0, 1});
    CHECK(b.index() == 5);
    CHECK(BitVector::from_index(3, 5) == b);
    CHECK(b.to_string() == "101");
    for (std::size_t idx = 0; idx < 16; ++idx)
        CHECK(BitVector::from_index(4, idx).index() == idx);
}

TEST_CASE("social function evaluation") {
    const SocialFunction parity = SocialFunction::builtin("parity", 2);
    CHECK(eval_social_function(parity, bits({1, 0, 1})) == 0);
    CHECK(eval_social_function(parity, bits({1, 0, 0})) == 1);

    // g(b) = b_0 when xor(b_1, b_2) = 0, otherwise the complement of b_0.
    // That is exactly the three-bit parity function.
    SocialFunction example{2, {}};
    example.table.resize(8);
    for (std::size_t idx = 0; idx < 8; ++idx) {
        const BitVector b = BitVector::from_index(3, idx);
        const int flip = b[1] ^ b[2];
        example.table[idx] = static_cast<std::uint8_t>(flip ? 1 - b[0] : b[0]);
    }
    CHECK(example == parity);
    CHECK(eval_social_function(example, bits({1, 0, 1})) == 0);

    const SocialFunction majority = SocialFunction::builtin("majority", 2);
    CHECK(eval_social_function(majority, bits({1, 1, 0})) == 1);
    CHECK(eval_social_function(majority, bits({0, 1, 0})) == 0);

    CHECK_THROWS_AS(eval_social_function(parity, bits({1, 0})), DimensionError);
}

TEST_CASE("builtin tables round trip through their string form") {
    for (const char* name : {"parity", "majority", "and-xor-center", "dictator:0", "dictator:2",
                             "constant:0", "constant:1"}) {
        const SocialFunction g = SocialFunction::builtin(name, 2);
        CHECK(SocialFunction::from_table_string(2, g.table_string()) == g);
    }
    CHECK(SocialFunction::builtin("dictator:0", 2).table_string() == "00001111");
    CHECK(SocialFunction::builtin("and-xor-center", 2).table_string() == "00011110");
    CHECK_THROWS_AS(SocialFunction::builtin("nope", 2), ParseError);
    CHECK_THROWS_AS(SocialFunction::builtin("dictator:9", 2), ParameterError);
    CHECK_THROWS_AS(SocialFunction::from_table_string(2, "0101"), DimensionError);
}

TEST_CASE("strategy classification") {
    CHECK(truthful_strategy().is_truthful());
    CHECK_FALSE(truthful_strategy().is_zero_information());
    CHECK(zero_information_strategy(rat(1, 3)).is_zero_information());
    CHECK(Strategy{rat(1, 2), rat(1, 2)}.is_zero_information());
    CHECK_FALSE(Strategy{rat(9, 10), rat(1, 10)}.is_truthful());
    CHECK_THROWS_AS(make_strategy(rat(3, 2), rat(0)), ParameterError);
}

TEST_CASE("message probabilities") {
    CHECK(message_prob(truthful_strategy(), 0) == rat(1));
    CHECK(message_prob(Strategy{rat(4, 5), rat(2, 5)}, 1) == rat(2, 5));
    CHECK(message_prob(zero_information_strategy(rat(1, 3)), 0) == rat(1, 3));
    CHECK(message_prob(zero_information_strategy(rat(1, 3)), 1) == rat(1, 3));
}

TEST_CASE("power-of-gap price examples") {
    const PriceFunction unit = PriceFunction::power_of_gap(rat(1), rat(1));
    CHECK(price(unit, truthful_strategy()) == rat(1));
    CHECK(price(unit, zero_information_strategy(rat(1, 2))) == rat(0));
    const PriceFunction doubled = PriceFunction::power_of_gap(rat(2), rat(1));
    CHECK(price(doubled, Strategy{rat(4, 5), rat(2, 5)}) == rat(4, 5));
}

TEST_CASE("relative price examples") {
    const PriceFunction doubled = PriceFunction::power_of_gap(rat(2), rat(1));
    CHECK(relative_price(doubled, truthful_strategy()) == rat(1));
    CHECK(relative_price(doubled, zero_information_strategy(rat(1, 4))) == rat(0));
    CHECK(relative_price(doubled, Strategy{rat(4, 5), rat(2, 5)}) == rat(2, 5));
}

TEST_CASE("price properties over the 1/20 grid") {
    const PriceFunction pf = PriceFunction::power_of_gap(rat(3, 7), rat(2));
    const Rat truthful_price = price(pf, truthful_strategy());
    for (int a = 0; a <= 20; ++a) {
        for (int b = 0; b <= 20; ++b) {
            const Strategy s{rat(a, 20), rat(b, 20)};
            const Rat p = price(pf, s);
            const Rat r = relative_price(pf, s);
            CHECK((p == 0) == s.is_zero_information());
            CHECK(r >= 0);
            CHECK(r <= 1);
            CHECK((r == 1) == (s.gap() == 1));
            CHECK(truthful_price >= p);
        }
    }
}

TEST_CASE("indicator price is the 0/1 substitute") {
    const PriceFunction ind = PriceFunction::indicator();
    CHECK(price(ind, zero_information_strategy(rat(2, 5))) == rat(0));
    CHECK(price(ind, Strategy{rat(1, 2), rat(2, 5)}) == rat(1));
    CHECK(price(ind, truthful_strategy()) == rat(1));
}

TEST_CASE("degenerate price function is rejected where it matters") {
    CHECK_THROWS_AS(PriceFunction::power_of_gap(rat(0), rat(1)), ParameterError);
    const PriceFunction broken{PriceForm::PowerOfGap, rat(0), rat(1)};  // bypasses the factory
    CHECK_THROWS_AS(relative_price(broken, Strategy{rat(1, 2), rat(1, 4)}),
                    InvalidPriceFunctionError);
}

TEST_CASE("relative price comparison stays exact for fractional exponents") {
    const PriceFunction sqrt_price = PriceFunction::power_of_gap(rat(1), rat(1, 2));
    const PriceFunction linear = PriceFunction::power_of_gap(rat(5), rat(1));
    const Strategy half_gap{rat(1, 2), rat(0)};
    // sqrt(1/2) > 1/2 and both sides exceed smaller gaps
    CHECK(compare_relative_price(sqrt_price, half_gap, linear, half_gap) > 0);
    CHECK(compare_relative_price(sqrt_price, half_gap, sqrt_price, half_gap) == 0);
    // sqrt(9/16) = 3/4 equals a linear gap of 3/4 exactly
    CHECK(compare_relative_price(sqrt_price, Strategy{rat(9, 16), rat(0)}, linear,
                                 Strategy{rat(3, 4), rat(0)}) == 0);
    // the weight never enters the relative price
    CHECK(compare_relative_price(linear, half_gap,
                                 PriceFunction::power_of_gap(rat(1, 100), rat(1)), half_gap) == 0);
}

TEST_CASE("scenario validation") {
    const SocialFunction g = SocialFunction::builtin("parity", 2);
    const PriceFunction pf = PriceFunction::power_of_gap(rat(1, 10), rat(1));
    CHECK_NOTHROW(make_scenario(g, {pf, pf}, {rat(1), rat(1)}));
    CHECK_THROWS_AS(make_scenario(g, {pf}, {rat(1), rat(1)}), DimensionError);
    CHECK_THROWS_AS(make_scenario(g, {pf, pf}, {rat(1)}), DimensionError);
    CHECK_THROWS_AS(make_scenario(g, {pf, PriceFunction::indicator()}, {rat(1), rat(1)}),
                    InvalidPriceFunctionError);
    CHECK_THROWS_AS(make_scenario(g, {pf, pf}, {rat(1), rat(0)}), ParameterError);
}

TEST_CASE("fixed-seed truth table is frozen") {
    CHECK(random_truth_table(2, 0x5EED).table_string() == "10000110");
    CHECK(standard_battery().size() == 15);
    CHECK(battery_scenario("rand3:w=1/5").g.table_string() == "10000110");
    CHECK_THROWS_AS(battery_scenario("nope"), ConfigError);
}
