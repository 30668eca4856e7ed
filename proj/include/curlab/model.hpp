#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curlab/rational.hpp"

namespace curlab {

/// Bit vector (b_0, ..., b_N); coordinate 0 is the center's bit.
struct BitVector {
    std::vector<std::uint8_t> bits;

    static BitVector from_index(std::size_t length, std::size_t index);
    /// Table index with b_0 as the most significant digit.
    std::size_t index() const;
    std::size_t size() const { return bits.size(); }
    std::uint8_t operator[](std::size_t k) const { return bits[k]; }
    std::string to_string() const;
    bool operator==(const BitVector&) const = default;
};

/// Conditional commitment (p, q): the probability of sending message 0 when
/// the private bit is 0 resp. 1.
struct Strategy {
    Rat p;
    Rat q;

    bool is_truthful() const { return p == 1 && q == 0; }
    bool is_zero_information() const { return p == q; }
    Rat gap() const;
    bool operator==(const Strategy&) const = default;
};

Strategy truthful_strategy();
Strategy zero_information_strategy(const Rat& c);
/// The center's fixed m_0 = b_0 channel, viewed as a strategy.
Strategy center_channel();
/// Validated constructor; throws ParameterError when p or q leaves [0,1].
Strategy make_strategy(Rat p, Rat q);

/// P(m = 0 | bit).
Rat message_prob(const Strategy& s, int bit);

/// Strategies of agents 1..N. The center commits to nothing.
struct StrategyProfile {
    std::vector<Strategy> strategies;

    std::size_t n_agents() const { return strategies.size(); }
    const Strategy& agent(int i) const;  // 1-based
    Strategy& agent(int i);
    bool all_truthful() const;
    bool all_zero_information() const;
    bool operator==(const StrategyProfile&) const = default;
};

StrategyProfile uniform_profile(int n_agents, const Strategy& s);

/// Truth table over all 2^(N+1) bit vectors, indexed by BitVector::index.
struct SocialFunction {
    int n_agents = 0;
    std::vector<std::uint8_t> table;

    static SocialFunction from_table(int n_agents, std::vector<std::uint8_t> table);
    /// Table given as a string of '0'/'1' characters in index order.
    static SocialFunction from_table_string(int n_agents, const std::string& bits);
    /// Builtins: "parity", "majority", "and-xor-center", "dictator:<k>",
    /// "constant:<v>".
    static SocialFunction builtin(const std::string& name, int n_agents);

    std::string table_string() const;
    SocialFunction complemented() const;
    bool operator==(const SocialFunction&) const = default;
};

int eval_social_function(const SocialFunction& g, const BitVector& b);

enum class PriceForm { PowerOfGap, Indicator };

/// Privacy price of a strategy: weight * |p-q|^exponent, or the 0/1 indicator
/// of any information release (a protocol-side substitute, not a model price).
struct PriceFunction {
    PriceForm form = PriceForm::PowerOfGap;
    Rat weight = Rat(1);
    Rat exponent = Rat(1);

    static PriceFunction power_of_gap(Rat weight, Rat exponent);
    static PriceFunction indicator();
    bool operator==(const PriceFunction&) const = default;
};

Rat price(const PriceFunction& pf, const Strategy& s);
/// price(s) / price(truthful); lies in [0,1].
Rat relative_price(const PriceFunction& pf, const Strategy& s);
/// Sign of relative_price(pf1,s1) - relative_price(pf2,s2). Exact for any
/// rational exponents, including ones whose powers are irrational.
int compare_relative_price(const PriceFunction& pf1, const Strategy& s1, const PriceFunction& pf2,
                           const Strategy& s2);

/// One experiment configuration: the social function plus per-agent price
/// functions and profit constants.
struct Scenario {
    int n_agents = 0;
    SocialFunction g;
    std::vector<PriceFunction> prices;
    std::vector<Rat> profits;

    /// Throws on inconsistent sizes, non-positive profits, or agent prices
    /// that are not power-of-gap.
    void validate() const;
    const PriceFunction& price_of(int agent) const;  // 1-based
    const Rat& profit_of(int agent) const;           // 1-based
};

Scenario make_scenario(SocialFunction g, std::vector<PriceFunction> prices, std::vector<Rat> profits);

}  // namespace curlab
